#include "zhbraille/pinyin.h"

#include <array>
#include <cctype>
#include <stdexcept>

namespace zhbraille {

namespace {

constexpr std::array<std::string_view, kInitialCount> kInitialKeys = {
    "",  "b", "p", "m", "f",  "d",  "t",  "n", "l", "g", "k",
    "h", "j", "q", "x", "zh", "ch", "sh", "r", "z", "c", "s",
};

constexpr std::array<std::string_view, kFinalCount> kFinalKeys = {
    "a",   "o",   "e",    "i",   "u",   "v",    "er",  "ai",  "ei",
    "ao",  "ou",  "ia",   "ie",  "iao", "iu",   "ua",  "uo",  "uai",
    "ui",  "ve",  "an",   "en",  "ang", "eng",  "ong", "ian", "in",
    "iang", "ing", "iong", "uan", "un",  "uang", "ueng", "van", "vn",
};

struct Spelling {
  std::string_view written;
  Final final;
};

// Zero-initial spellings with y/w.
constexpr Spelling kYwSpellings[] = {
    {"yi", Final::kI},     {"ya", Final::kIa},     {"ye", Final::kIe},
    {"yao", Final::kIao},  {"you", Final::kIu},    {"yan", Final::kIan},
    {"yin", Final::kIn},   {"yang", Final::kIang}, {"ying", Final::kIng},
    {"yong", Final::kIong}, {"yu", Final::kV},     {"yue", Final::kVe},
    {"yuan", Final::kVan}, {"yun", Final::kVn},    {"yv", Final::kV},
    {"yve", Final::kVe},   {"yvan", Final::kVan},  {"yvn", Final::kVn},
    {"wu", Final::kU},     {"wa", Final::kUa},     {"wo", Final::kUo},
    {"wai", Final::kUai},  {"wei", Final::kUi},    {"wan", Final::kUan},
    {"wen", Final::kUn},   {"wang", Final::kUang}, {"weng", Final::kUeng},
};

bool BareZeroInitialFinal(Final f) {
  switch (f) {
    case Final::kA: case Final::kO: case Final::kE: case Final::kEr:
    case Final::kAi: case Final::kEi: case Final::kAo: case Final::kOu:
    case Final::kAn: case Final::kEn: case Final::kAng: case Final::kEng:
      return true;
    default:
      return false;
  }
}

bool IsPalatal(Initial i) {
  return i == Initial::kJ || i == Initial::kQ || i == Initial::kX;
}

std::string Normalize(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    unsigned char c = static_cast<unsigned char>(text[i]);
    if (c == 0xC3 && i + 1 < text.size() &&
        (static_cast<unsigned char>(text[i + 1]) == 0xBC ||
         static_cast<unsigned char>(text[i + 1]) == 0x9C)) {
      out.push_back('v');  // u-umlaut
      ++i;
    } else if (c == 'u' && i + 1 < text.size() && text[i + 1] == ':') {
      out.push_back('v');
      ++i;
    } else {
      out.push_back(static_cast<char>(std::tolower(c)));
    }
  }
  return out;
}

const char* const kStandardBases =
    "a ai an ang ao ba bai ban bang bao bei ben beng bi bian biao bie bin "
    "bing bo bu ca cai can cang cao ce cei cen ceng cha chai chan chang "
    "chao che chen cheng chi chong chou chu chua chuai chuan chuang chui "
    "chun chuo ci cong cou cu cuan cui cun cuo da dai dan dang dao de dei "
    "den deng di dia dian diao die din ding diu dong dou du duan dui dun "
    "duo e ei en eng er fa fan fang fei fen feng fo fou fu ga gai gan gang "
    "gao ge gei gen geng gong gou gu gua guai guan guang gui gun guo ha "
    "hai han hang hao he hei hen heng hong hou hu hua huai huan huang hui "
    "hun huo ji jia jian jiang jiao jie jin jing jiong jiu ju juan jue jun "
    "ka kai kan kang kao ke kei ken keng kong kou ku kua kuai kuan kuang "
    "kui kun kuo la lai lan lang lao le lei len leng li lia lian liang "
    "liao lie lin ling liu lo long lou lu luan lun luo lv lve ma mai man "
    "mang mao me mei men meng mi mian miao mie min ming miu mo mou mu na "
    "nai nan nang nao ne nei nen neng ni nia nian niang niao nie nin ning "
    "niu nong nou nu nuan nun nuo nv nve o ou pa pai pan pang pao pei pen "
    "peng pi pian piao pie pin ping po pou pu qi qia qian qiang qiao qie "
    "qin qing qiong qiu qu quan que qun ran rang rao re ren reng ri rong "
    "rou ru rua ruan rui run ruo sa sai san sang sao se sen seng sha shai "
    "shan shang shao she shei shen sheng shi shou shu shua shuai shuan "
    "shuang shui shun shuo si song sou su suan sui sun suo ta tai tan tang "
    "tao te tei teng ti tian tiao tie ting tong tou tu tuan tui tun tuo wa "
    "wai wan wang wei wen weng wo wu xi xia xian xiang xiao xie xin xing "
    "xiong xiu xu xuan xue xun ya yan yang yao ye yi yin ying yong you yu "
    "yuan yue yun za zai zan zang zao ze zei zen zeng zha zhai zhan zhang "
    "zhao zhe zhei zhen zheng zhi zhong zhou zhu zhua zhuai zhuan zhuang "
    "zhui zhun zhuo zi zong zou zu zuan zui zun zuo "    ;

}  // namespace

std::string_view InitialKey(Initial initial) {
  return kInitialKeys[static_cast<std::size_t>(initial)];
}

std::string_view FinalKey(Final final) {
  return kFinalKeys[static_cast<std::size_t>(final)];
}

std::optional<Initial> InitialFromKey(std::string_view key) {
  for (std::size_t i = 1; i < kInitialKeys.size(); ++i) {
    if (kInitialKeys[i] == key) return static_cast<Initial>(i);
  }
  return std::nullopt;
}

std::optional<Final> FinalFromKey(std::string_view key) {
  for (std::size_t i = 0; i < kFinalKeys.size(); ++i) {
    if (kFinalKeys[i] == key) return static_cast<Final>(i);
  }
  return std::nullopt;
}

std::optional<PinyinSyllable> ParsePinyinBase(std::string_view raw) {
  const std::string base = Normalize(raw);
  if (base.empty()) return std::nullopt;

  if (base[0] == 'y' || base[0] == 'w') {
    for (const auto& s : kYwSpellings) {
      if (s.written == base) return PinyinSyllable{Initial::kZero, s.final};
    }
    return std::nullopt;
  }

  Initial initial = Initial::kZero;
  std::string_view rest = base;
  if (base.size() >= 2 && base[1] == 'h' &&
      (base[0] == 'z' || base[0] == 'c' || base[0] == 's')) {
    initial = *InitialFromKey(base.substr(0, 2));
    rest.remove_prefix(2);
  } else if (auto i = InitialFromKey(base.substr(0, 1))) {
    initial = *i;
    rest.remove_prefix(1);
  }

  std::string final_key(rest);
  if (IsPalatal(initial) && !final_key.empty() && final_key[0] == 'u') {
    final_key[0] = 'v';
  } else if ((initial == Initial::kN || initial == Initial::kL) &&
             final_key == "ue") {
    final_key = "ve";
  } else if (final_key == "iou") {
    final_key = "iu";
  } else if (final_key == "uei") {
    final_key = "ui";
  } else if (final_key == "uen") {
    final_key = "un";
  }

  auto final = FinalFromKey(final_key);
  if (!final) return std::nullopt;
  if (initial == Initial::kZero && !BareZeroInitialFinal(*final)) {
    return std::nullopt;
  }
  if (initial != Initial::kZero &&
      (*final == Final::kEr || *final == Final::kUeng)) {
    return std::nullopt;
  }
  return PinyinSyllable{initial, *final};
}

std::optional<PinyinSyllable> ParsePinyin(std::string_view text) {
  int tone = kNeutralTone;
  if (!text.empty() && text.back() >= '0' && text.back() <= '9') {
    tone = text.back() - '0';
    if (tone < 1 || tone > 5) return std::nullopt;
    text.remove_suffix(1);
  }
  auto syllable = ParsePinyinBase(text);
  if (!syllable) return std::nullopt;
  syllable->tone = tone;
  return syllable;
}

std::string FormatPinyinBase(Initial initial, Final final) {
  if (initial == Initial::kZero) {
    for (const auto& s : kYwSpellings) {
      if (s.final == final) return std::string(s.written);
    }
    return std::string(FinalKey(final));
  }
  std::string out(InitialKey(initial));
  std::string final_key(FinalKey(final));
  if (IsPalatal(initial) && final_key[0] == 'v') final_key[0] = 'u';
  return out + final_key;
}

std::string FormatPinyin(const PinyinSyllable& syllable) {
  return FormatPinyinBase(syllable.initial, syllable.final) +
         std::to_string(syllable.tone);
}

bool SyllableInventory::contains_initial(Initial initial) const {
  for (int f = 0; f < kFinalCount; ++f) {
    if (contains(initial, static_cast<Final>(f))) return true;
  }
  return false;
}

bool SyllableInventory::contains_final(Final final) const {
  for (int i = 0; i < kInitialCount; ++i) {
    if (contains(static_cast<Initial>(i), final)) return true;
  }
  return false;
}

std::vector<SyllableInventory::Pair> SyllableInventory::pairs() const {
  std::vector<Pair> out;
  for (int i = 0; i < kInitialCount; ++i) {
    for (int f = 0; f < kFinalCount; ++f) {
      if (contains(static_cast<Initial>(i), static_cast<Final>(f))) {
        out.push_back({static_cast<Initial>(i), static_cast<Final>(f)});
      }
    }
  }
  return out;
}

const SyllableInventory& SyllableInventory::Standard() {
  static const SyllableInventory inventory = [] {
    SyllableInventory inv;
    std::string_view bases = kStandardBases;
    while (!bases.empty()) {
      auto space = bases.find(' ');
      auto token = bases.substr(0, space);
      bases.remove_prefix(space == std::string_view::npos ? bases.size()
                                                          : space + 1);
      if (token.empty()) continue;
      auto s = ParsePinyinBase(token);
      if (!s) {
        throw std::logic_error("bad built-in syllable " + std::string(token));
      }
      inv.insert(s->initial, s->final);
    }
    return inv;
  }();
  return inventory;
}

}  // namespace zhbraille
