// Acceptance checks: one PASS/FAIL line per criterion; exit status 1 if any
// fails.

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "bleu_oracle.h"
#include "lattice_oracle.h"
#include "test_data.h"
#include "zhbraille/bleu.h"
#include "zhbraille/cell.h"
#include "zhbraille/corpus.h"
#include "zhbraille/io.h"
#include "zhbraille/pipeline.h"
#include "zhbraille/toy.h"
#include "zhbraille/transcoder.h"
#include "zhbraille/utf8.h"

namespace zb = zhbraille;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void Report(const std::string& name, const std::function<Outcome()>& check) {
  Outcome outcome;
  try {
    outcome = check();
  } catch (const std::exception& e) {
    outcome = {false, std::string("exception: ") + e.what()};
  }
  if (!outcome.pass) ++failures;
  std::cout << (outcome.pass ? "PASS " : "FAIL ") << name << ": "
            << outcome.detail << std::endl;
}

Outcome BrailleBijection() {
  int exact = 0;
  for (unsigned v = 0; v < 64; ++v) {
    zb::BrailleCell cell = zb::BrailleCell::FromValue(v);
    char32_t c = zb::CellToChar(cell);
    if (c == 0x2800 + v && zb::CharToCell(c) == cell) ++exact;
  }
  return {exact == 64, std::to_string(exact) + "/64 round trips exact"};
}

Outcome EncodingInverse() {
  auto start = Clock::now();
  const auto& scheme = zb::testing::ShippedScheme();
  std::size_t checked = 0, recovered = 0;
  for (const auto& pair : scheme.inventory().pairs()) {
    for (int tone = 1; tone <= 5; ++tone) {
      zb::PinyinSyllable s{pair.initial, pair.final, tone};
      for (bool include : {true, false}) {
        auto candidates = zb::CellsToSyllableCandidates(
            zb::SyllableToCells(s, scheme, include), scheme);
        ++checked;
        recovered += std::find(candidates.begin(), candidates.end(), s) !=
                     candidates.end();
      }
    }
  }
  double seconds = Seconds(start);
  std::ostringstream detail;
  detail << recovered << "/" << checked << " syllable encodings recovered ("
         << scheme.inventory().size() << " bases x 5 tones x 2 settings) in "
         << seconds << " s";
  return {recovered == checked && seconds < 1.0, detail.str()};
}

Outcome ToneStatistics() {
  const auto& scheme = zb::testing::ShippedScheme();
  const auto& lexicon = zb::testing::ShippedLexicon();
  auto sentences = zb::IngestSentences(
      zb::ReadTextFile(zb::testing::DataPath("sample/sentences.txt")));
  struct Tally {
    std::size_t toned = 0, retained = 0;
  };
  std::map<std::string, Tally> tally;
  const std::pair<std::string, zb::TonePolicy> policies[] = {
      {"full", zb::TonePolicy::FullTone(1)},
      {"none", zb::TonePolicy::NoTone(1)},
      {"ten", zb::TonePolicy::TenPercent(1)}};
  for (const auto& [name, policy] : policies) {
    Tally& t = tally[name];
    std::uint64_t index = 0;
    while (t.toned < 10000) {
      for (const auto& s : sentences) {
        auto out = zb::TranscodeSentence(s.text, scheme, lexicon, policy, index++);
        for (const auto& e : out.syllables) {
          t.toned += e.syllable.tone != zb::kNeutralTone;
        }
        // Count from the braille itself.
        t.retained += zb::CountRetainedTones(out.braille, scheme).retained;
      }
    }
  }
  double fraction =
      static_cast<double>(tally["ten"].retained) / tally["ten"].toned;
  bool pass = fraction >= 0.09 && fraction <= 0.11 &&
              tally["full"].retained == tally["full"].toned &&
              tally["none"].retained == 0;
  std::ostringstream detail;
  detail << "TenPercent kept " << tally["ten"].retained << "/"
         << tally["ten"].toned << " = " << fraction
         << " (want [0.09, 0.11]); FullTone " << tally["full"].retained << "/"
         << tally["full"].toned << "; NoTone " << tally["none"].retained << "/"
         << tally["none"].toned;
  return {pass, detail.str()};
}

std::string IndexDigest(const std::array<std::vector<std::size_t>, 3>& split) {
  std::string bytes;
  for (const auto& part : split) {
    for (std::size_t i : part) bytes += std::to_string(i) + ",";
    bytes += ";";
  }
  return zb::Sha256Hex(bytes);
}

Outcome SplitSizes() {
  auto a = zb::SplitIndices(656340, {}, 7);
  auto b = zb::SplitIndices(656340, {}, 7);
  auto small = zb::SplitIndices(10, {}, 7);
  bool sizes = a[0].size() == 525072 && a[1].size() == 65634 &&
               a[2].size() == 65634;
  bool ten = small[0].size() == 8 && small[1].size() == 1 && small[2].size() == 1;
  std::string da = IndexDigest(a), db = IndexDigest(b);
  std::ostringstream detail;
  detail << "N=656340 -> " << a[0].size() << "/" << a[1].size() << "/"
         << a[2].size() << " (want 525072/65634/65634); N=10 -> "
         << small[0].size() << "/" << small[1].size() << "/" << small[2].size()
         << "; digests " << (da == db ? "equal" : "differ");
  return {sizes && ten && da == db, detail.str()};
}

Outcome BleuOracle() {
  std::vector<zb::TokenSequence> corpus = {zb::TokenizeChinese("我们今天去公园散步"),
                                           zb::TokenizeChinese("他是老师"),
                                           zb::TokenizeChinese("好")};
  double identity = zb::CorpusBleu(corpus, corpus).score;
  double disjoint = zb::CorpusBleu({zb::TokenizeChinese("甲乙丙丁")},
                                   {zb::TokenizeChinese("戊己庚辛")})
                        .score;
  double worst = 0;
  std::uint64_t counter = 0;
  auto below = [&](std::uint64_t n) { return zb::UniformBelow(31, 0, counter, n); };
  auto sentence = [&] {
    zb::TokenSequence s;
    std::size_t length = 1 + below(10);
    for (std::size_t i = 0; i < length; ++i) {
      s.push_back(std::string(1, static_cast<char>('a' + below(4))));
    }
    return s;
  };
  std::vector<zb::TokenSequence> cands, refs;
  for (int i = 0; i < 50; ++i) {
    cands.push_back(sentence());
    refs.push_back(sentence());
    double got = zb::CorpusBleu({cands.back()}, {refs.back()}).score;
    double want = zb::testing::OracleBleu({cands.back()}, {refs.back()});
    worst = std::max(worst, std::abs(got - want));
  }
  worst = std::max(worst, std::abs(zb::CorpusBleu(cands, refs).score -
                                   zb::testing::OracleBleu(cands, refs)));
  std::ostringstream detail;
  detail << "identity " << identity << ", disjoint " << disjoint
         << ", max |diff| vs brute force over 50 pairs " << worst;
  return {identity == 100.0 && disjoint == 0.0 && worst <= 1e-9, detail.str()};
}

Outcome DecoderOptimality() {
  int agree = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    zb::testing::RandomSource rng(424242 + seed);
    int order = 1 + static_cast<int>(seed % 3);
    auto model = zb::testing::RandomModel(rng, order);
    auto lattice = zb::testing::RandomLattice(rng, 8, 6);
    auto want = zb::testing::Exhaustive(lattice, model);
    auto got = zb::Decode(lattice, model,
                          zb::testing::SaturatingWidth(lattice, order));
    agree += got.text == want.text && got.score == want.score;
  }
  return {agree == 100,
          std::to_string(agree) + "/100 lattices match exhaustive argmax"};
}

fs::path Scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("zhbraille_acceptance_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

zb::PipelineConfig ToyConfig(const fs::path& dir) {
  zb::ToyCorpus toy = zb::MakeToyCorpus();
  zb::WriteTextFile((dir / "lexicon.tsv").string(), toy.lexicon);
  zb::WriteTextFile((dir / "sentences.txt").string(), toy.sentences);
  zb::PipelineConfig config;
  config.corpus = (dir / "sentences.txt").string();
  config.lexicon = (dir / "lexicon.tsv").string();
  config.scheme = zb::testing::DataPath("scheme/current_braille.tsv");
  config.seed = 1;
  config.split_seed = 2;
  return config;
}

Outcome ContextResolvesAmbiguity() {
  auto start = Clock::now();
  fs::path dir = Scratch("context");
  zb::PipelineConfig base = ToyConfig(dir);
  auto run = [&](const std::string& policy, int order) {
    zb::PipelineConfig config = base;
    config.tone_policy = policy;
    config.order = order;
    config.out = (dir / (policy + "_" + std::to_string(order))).string();
    return zb::RunPipeline(config).character_accuracy;
  };
  double full = run("full", 2), ten = run("ten", 2), none = run("none", 2);
  double none_unigram = run("none", 1);
  double seconds = Seconds(start);
  std::ostringstream detail;
  detail << "char accuracy full " << full << " >= ten " << ten << " >= none "
         << none << "; bigram " << none << " >= unigram " << none_unigram
         << " under NoTone; " << seconds << " s";
  return {full >= ten && ten >= none && none >= none_unigram && seconds < 300,
          detail.str()};
}

int RunCli(const std::string& args) {
  int status = std::system((std::string("'") + ZHB_CLI + "' " + args +
                            " >/dev/null 2>&1")
                               .c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::map<std::string, std::string> Digests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = zb::Sha256FileHex(e.path().string());
  }
  return out;
}

Outcome PipelineReproducibility() {
  fs::path dir = Scratch("repro");
  zb::PipelineConfig config = ToyConfig(dir);
  config.tone_policy = "p=0.1";
  config.out = (dir / "seed_run").string();
  zb::WriteTextFile((dir / "run.conf").string(), zb::SerializeConfig(config));
  if (RunCli("pipeline --config '" + (dir / "run.conf").string() + "'") != 0) {
    return {false, "initial pipeline run failed"};
  }
  fs::path manifest = dir / "manifest.json";
  fs::copy_file(fs::path(config.out) / "manifest.json", manifest);
  std::map<std::string, std::string> digests[2];
  for (int i = 0; i < 2; ++i) {
    fs::path out = dir / ("from_manifest_" + std::to_string(i));
    if (RunCli("pipeline --manifest '" + manifest.string() + "' --out '" +
               out.string() + "'") != 0) {
      return {false, "pipeline --manifest failed"};
    }
    digests[i] = Digests(out);
  }
  bool same = digests[0] == digests[1] && digests[0] == Digests(config.out);
  return {same && digests[0].size() == 9,
          std::to_string(digests[0].size()) + " artifacts, two runs from one manifest " +
              (same ? "byte-identical" : "differ")};
}

}  // namespace

int main() {
  Report("braille-unicode-bijection", BrailleBijection);
  Report("encoding-inverse-full-inventory", EncodingInverse);
  Report("tone-policy-statistics", ToneStatistics);
  Report("split-sizes", SplitSizes);
  Report("bleu-oracle", BleuOracle);
  Report("decoder-optimality", DecoderOptimality);
  Report("context-resolves-ambiguity", ContextResolvesAmbiguity);
  Report("pipeline-reproducibility", PipelineReproducibility);
  std::cout << (failures == 0 ? "all acceptance criteria passed"
                              : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
