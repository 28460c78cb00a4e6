#include "zhbraille/decoder.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "zhbraille/error.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

std::size_t Lattice::path_count() const {
  std::size_t total = 1;
  for (const auto& p : positions) {
    const std::size_t n = p.candidates.size();
    if (n != 0 && total > std::numeric_limits<std::size_t>::max() / n) {
      return std::numeric_limits<std::size_t>::max();
    }
    total *= n;
  }
  return total;
}

Lattice BuildLattice(const std::vector<SyllableGroup>& groups,
                     const BrailleScheme& scheme, const Lexicon& lexicon) {
  Lattice lattice;
  std::vector<std::size_t> empty;
  lattice.positions.reserve(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g) {
    const auto& group = groups[g];
    LatticePosition position;
    position.word_index = group.word_index;
    position.syllables = CellsToSyllableCandidates(group.cells, scheme);
    if (group.has_tone && !position.syllables.empty()) {
      position.tone = position.syllables.front().tone;
    }
    std::map<char32_t, std::uint64_t> merged;
    for (const auto& s : position.syllables) {
      for (const auto& entry : lexicon.homophones(s.initial, s.final, s.tone)) {
        merged[entry.character] += entry.frequency;
      }
    }
    double total = 0;
    for (const auto& [c, freq] : merged) {
      double weight = std::max<double>(1.0, static_cast<double>(freq));
      position.candidates.push_back({c, weight, 0.0});
      total += weight;
    }
    for (auto& c : position.candidates) {
      c.log_emission = std::log(c.weight / total);
    }
    if (position.candidates.empty()) empty.push_back(g);
    lattice.positions.push_back(std::move(position));
  }
  if (!empty.empty()) throw UndecodablePositionError(std::move(empty));
  return lattice;
}

double ScorePath(const Lattice& lattice, const NgramModel& model,
                 const std::vector<std::size_t>& choices) {
  if (choices.size() != lattice.positions.size()) {
    throw std::invalid_argument("one choice per lattice position required");
  }
  double score = 0;
  std::u32string path;
  for (std::size_t p = 0; p < choices.size(); ++p) {
    const auto& candidate = lattice.positions[p].candidates.at(choices[p]);
    score = score + model.LogProbability(path, candidate.character) +
            candidate.log_emission;
    path.push_back(candidate.character);
  }
  return score + model.LogProbability(path, kEndSymbol);
}

namespace {

struct Hypothesis {
  double score = 0;
  std::u32string path;
  std::vector<std::size_t> choices;
};

// Higher score first, then the lexicographically smaller path.
bool Better(const Hypothesis& a, const Hypothesis& b) {
  if (a.score != b.score) return a.score > b.score;
  return a.path < b.path;
}

Hypothesis Search(const Lattice& lattice, const NgramModel& model,
                  std::size_t width, bool& pruned) {
  const std::size_t state_length = static_cast<std::size_t>(model.order() - 1);
  std::vector<Hypothesis> beam(1);
  pruned = false;
  for (const auto& position : lattice.positions) {
    std::unordered_map<std::u32string, Hypothesis> states;
    for (const auto& hyp : beam) {
      for (std::size_t ci = 0; ci < position.candidates.size(); ++ci) {
        const auto& candidate = position.candidates[ci];
        Hypothesis next;
        next.score = hyp.score +
                     model.LogProbability(hyp.path, candidate.character) +
                     candidate.log_emission;
        next.path = hyp.path;
        next.path.push_back(candidate.character);
        const std::size_t keep = std::min(state_length, next.path.size());
        std::u32string key = next.path.substr(next.path.size() - keep);
        auto it = states.find(key);
        if (it != states.end() && !Better(next, it->second)) continue;
        next.choices = hyp.choices;
        next.choices.push_back(ci);
        states.insert_or_assign(std::move(key), std::move(next));
      }
    }
    beam.clear();
    beam.reserve(states.size());
    for (auto& [key, hyp] : states) beam.push_back(std::move(hyp));
    std::sort(beam.begin(), beam.end(), Better);
    if (beam.size() > width) {
      pruned = true;
      beam.resize(width);
    }
  }
  for (auto& hyp : beam) {
    hyp.score = hyp.score + model.LogProbability(hyp.path, kEndSymbol);
  }
  return *std::min_element(beam.begin(), beam.end(), Better);
}

}  // namespace

DecodeResult Decode(const Lattice& lattice, const NgramModel& model,
                    std::size_t beam_width) {
  if (beam_width == 0) throw std::invalid_argument("beam width must be >= 1");
  for (std::size_t p = 0; p < lattice.positions.size(); ++p) {
    if (lattice.positions[p].candidates.empty()) {
      throw UndecodablePositionError({p});
    }
  }
  // A pruned search is not monotone in its width, so every narrower width is
  // searched as well. Once nothing is pruned the search is exact.
  std::optional<Hypothesis> best;
  for (std::size_t width = 1; width <= beam_width; ++width) {
    bool pruned = false;
    Hypothesis found = Search(lattice, model, width, pruned);
    if (!best || Better(found, *best)) best = std::move(found);
    if (!pruned) break;
  }
  return {std::move(best->path), std::move(best->choices), best->score};
}

std::u32string DecodeBraille(std::string_view braille,
                             const BrailleScheme& scheme,
                             const Lexicon& lexicon, const NgramModel& model,
                             std::size_t beam_width) {
  Lattice lattice =
      BuildLattice(ParseBrailleSyllables(braille, scheme), scheme, lexicon);
  return Decode(lattice, model, beam_width).text;
}

double CharacterAccuracy(std::u32string_view hypothesis,
                         std::u32string_view reference) {
  const std::size_t longest = std::max(hypothesis.size(), reference.size());
  if (longest == 0) return 1.0;
  std::size_t matches = 0;
  const std::size_t shortest = std::min(hypothesis.size(), reference.size());
  for (std::size_t i = 0; i < shortest; ++i) {
    matches += hypothesis[i] == reference[i] ? 1 : 0;
  }
  return static_cast<double>(matches) / static_cast<double>(longest);
}

}  // namespace zhbraille
