#!/usr/bin/env python3
"""Regenerates data/lexicon/zh_lexicon.tsv.

Word list and frequencies come from jieba's dict.txt; pronunciations come
from pypinyin (phrase-aware for multi-character words, heteronym lists for
single characters). A character's first pypinyin reading carries its jieba
frequency; secondary readings get frequency // 20 (at least 1).

    pip install jieba pypinyin
    python3 tools/make_lexicon.py --out data/lexicon/zh_lexicon.tsv
"""

import argparse
import os
import re

import jieba
from pypinyin import Style, pinyin

# Interjection-only and marginal syllables with no cell in the braille scheme.
EXCLUDED = {"hm", "hng", "m", "n", "ng", "ê", "yo", "biang", "fiao", "bong", "wong"}
CJK = re.compile(r"^[㐀-䶿一-鿿]+$")
PINYIN = re.compile(r"^[a-zü]+[1-5]$")


def usable(reading):
    # pypinyin echoes the character back when it has no reading.
    if not PINYIN.match(reading):
        return False
    return reading[:-1] not in EXCLUDED


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--out", required=True)
    ap.add_argument("--min-char-freq", type=int, default=50)
    ap.add_argument("--min-word-freq", type=int, default=200)
    args = ap.parse_args()

    dict_path = os.path.join(os.path.dirname(jieba.__file__), "dict.txt")
    chars, words = {}, {}
    with open(dict_path, encoding="utf-8") as f:
        for line in f:
            parts = line.split()
            if len(parts) < 2 or not CJK.match(parts[0]):
                continue
            freq = int(parts[1])
            if len(parts[0]) == 1:
                if freq >= args.min_char_freq:
                    chars[parts[0]] = max(chars.get(parts[0], 0), freq)
            elif freq >= args.min_word_freq:
                words[parts[0]] = max(words.get(parts[0], 0), freq)

    rows = []
    for ch in sorted(chars):
        readings = pinyin(ch, style=Style.TONE3, heteronym=True,
                          neutral_tone_with_five=True)[0]
        seen = []
        for r in readings:
            if usable(r) and r not in seen:
                seen.append(r)
        for i, r in enumerate(seen):
            freq = chars[ch] if i == 0 else max(1, chars[ch] // 20)
            rows.append((ch, r, freq))
    known = {ch for ch, _, _ in rows}
    for w in sorted(words):
        if not all(c in known for c in w):
            continue
        readings = [r[0] for r in pinyin(w, style=Style.TONE3,
                                         neutral_tone_with_five=True)]
        if len(readings) != len(w) or not all(usable(r) for r in readings):
            continue
        rows.append((w, " ".join(readings), words[w]))

    with open(args.out, "w", encoding="utf-8") as f:
        f.write("# word\tpinyin\tfrequency\n")
        for w, p, freq in rows:
            f.write(f"{w}\t{p}\t{freq}\n")


if __name__ == "__main__":
    main()
