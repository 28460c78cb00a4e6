#include <gtest/gtest.h>

#include <filesystem>
#include <map>

#include "json.hpp"
#include "test_data.h"
#include "zhbraille/io.h"
#include "zhbraille/pipeline.h"
#include "zhbraille/toy.h"
#include "zhbraille/utf8.h"

namespace zhbraille {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;

fs::path ScratchDir(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("zhbraille_pipeline_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

// Writes the toy corpus once per directory.
PipelineConfig ToyConfig(const fs::path& dir, const std::string& policy) {
  ToyCorpus toy = MakeToyCorpus();
  WriteTextFile((dir / "lexicon.tsv").string(), toy.lexicon);
  WriteTextFile((dir / "sentences.txt").string(), toy.sentences);
  PipelineConfig config;
  config.corpus = (dir / "sentences.txt").string();
  config.lexicon = (dir / "lexicon.tsv").string();
  config.scheme = DataPath("scheme/current_braille.tsv");
  config.tone_policy = policy;
  config.seed = 3;
  config.split_seed = 4;
  config.out = (dir / ("out_" + policy)).string();
  return config;
}

std::map<std::string, std::string> DirectoryDigests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    out[entry.path().filename().string()] = Sha256FileHex(entry.path().string());
  }
  return out;
}

TEST(ConfigTest, RoundTrip) {
  PipelineConfig config;
  config.corpus = "a b/c.txt";
  config.scheme = "s.tsv";
  config.lexicon = "l.tsv";
  config.tone_policy = "p=0.3";
  config.seed = 18446744073709551615ull;
  config.split_seed = 12;
  config.ratios = {7, 2, 1};
  config.order = 3;
  config.k = 0.1234567890123;
  config.beam = 17;
  config.format = "jsonl";
  config.workers = 4;
  config.out = "out dir";
  std::string text = SerializeConfig(config);
  PipelineConfig back = ParseConfig(text);
  EXPECT_EQ(back, config);
  EXPECT_EQ(back.k, config.k);
  EXPECT_EQ(SerializeConfig(back), text);
  EXPECT_EQ(ParseConfig(SerializeConfig(PipelineConfig{})), PipelineConfig{});
}

TEST(ConfigTest, CommentsAndSpacing) {
  auto config = ParseConfig("# c\n\n  order   =  3 \nratios=1:1:1\n");
  EXPECT_EQ(config.order, 3);
  EXPECT_EQ(config.ratios.training, 1u);
  EXPECT_EQ(config.beam, 8u);
}

TEST(ConfigTest, Errors) {
  const char* bad[] = {"nope = 1\n", "order\n", "order = 4\n", "k = 0\n",
                       "beam = 0\n", "beam = x\n", "ratios = 8:1\n",
                       "ratios = 8:0:1\n", "format = csv\n",
                       "tone_policy = p=2\n", "seed = -1\n"};
  for (const char* text : bad) {
    try {
      ParseConfig(std::string("# first\n") + text, "cfg");
      ADD_FAILURE() << text;
    } catch (const ParseError& e) {
      EXPECT_EQ(e.line(), 2u) << text;
      EXPECT_EQ(e.source(), "cfg");
    }
  }
}

TEST(PipelineHelpersTest, HanOnlyAndTrainingSentences) {
  EXPECT_EQ(HanOnly("我们，今天 abc。"), U"我们今天");
  auto sentences = ReadTrainingSentences("⠁\t我们。\n1\t今天\n\n明天\n");
  EXPECT_EQ(sentences, (std::vector<std::u32string>{U"我们", U"今天", U"明天"}));
  auto r = ParseRatios("8:1:1");
  EXPECT_EQ(FormatRatios(r), "8:1:1");
}

TEST(GenDatasetTest, ReproducibleAndRecorded) {
  fs::path dir = ScratchDir("gen");
  PipelineConfig config = ToyConfig(dir, "p=0.1");
  auto first = RunGenDataset(config);
  auto digests = DirectoryDigests(config.out);
  EXPECT_EQ(digests.size(), 5u);  // 3 splits, stats, manifest
  fs::remove_all(config.out);
  RunGenDataset(config);
  EXPECT_EQ(DirectoryDigests(config.out), digests);

  EXPECT_EQ(first.splits[0].pairs.size(), 400u);
  EXPECT_EQ(first.splits[1].pairs.size(), 50u);
  EXPECT_EQ(first.splits[2].pairs.size(), 50u);

  auto manifest = nlohmann::json::parse(
      ReadTextFile((fs::path(config.out) / "manifest.json").string()));
  EXPECT_EQ(manifest["config"]["seed"], "3");
  EXPECT_EQ(manifest["config"]["split_seed"], "4");
  EXPECT_EQ(manifest["tone_policy"]["seed"], 3);
  EXPECT_EQ(manifest["split"]["seed"], 4);
  EXPECT_EQ(manifest["counts"]["pairs"], 500);
  EXPECT_EQ(manifest["counts"]["skipped_unknown_character"], 0);
  EXPECT_EQ(manifest["inputs"]["corpus"]["sha256"], Sha256FileHex(config.corpus));
  EXPECT_EQ(manifest["outputs"]["train.tsv"],
            Sha256FileHex((fs::path(config.out) / "train.tsv").string()));

  PipelineConfig from_manifest = ConfigFromManifest(
      ReadTextFile((fs::path(config.out) / "manifest.json").string()));
  from_manifest.out = config.out;
  EXPECT_EQ(from_manifest, config);
}

TEST(GenDatasetTest, Jsonl) {
  fs::path dir = ScratchDir("jsonl");
  PipelineConfig config = ToyConfig(dir, "full");
  config.format = "jsonl";
  RunGenDataset(config);
  std::string text = ReadTextFile((fs::path(config.out) / "test.jsonl").string());
  auto lines = SplitLines(text);
  ASSERT_EQ(lines.size(), 50u);
  auto row = nlohmann::json::parse(lines[0]);
  EXPECT_TRUE(row.contains("braille"));
  EXPECT_TRUE(row.contains("text"));
}

TEST(GenDatasetTest, InputsValidatedBeforeAnyOutput) {
  fs::path dir = ScratchDir("validate");
  PipelineConfig config = ToyConfig(dir, "full");
  WriteTextFile(config.lexicon, "甲\tnot-pinyin\t1\n");
  try {
    RunGenDataset(config);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "load");
    EXPECT_EQ(e.kind(), ErrorKind::kParse);
    EXPECT_NE(std::string(e.what()).find("lexicon.tsv:1"), std::string::npos);
  }
  EXPECT_FALSE(fs::exists(config.out));

  config = ToyConfig(dir, "full");
  config.corpus = (dir / "missing.txt").string();
  try {
    RunGenDataset(config);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

TEST(GenDatasetTest, TooFewSentences) {
  fs::path dir = ScratchDir("few");
  PipelineConfig config = ToyConfig(dir, "full");
  ToyCorpusOptions options;
  options.sentences = 5;
  WriteTextFile(config.corpus, MakeToyCorpus(options).sentences);
  try {
    RunGenDataset(config);
    FAIL();
  } catch (const StageError& e) {
    EXPECT_EQ(e.stage(), "gen-dataset");
    EXPECT_EQ(e.kind(), ErrorKind::kInsufficientData);
  }
}

TEST(PipelineTest, ToyPolicies) {
  fs::path dir = ScratchDir("policies");
  std::map<std::string, PipelineResult> results;
  for (const char* policy : {"full", "none", "p=0.1"}) {
    results[policy] = RunPipeline(ToyConfig(dir, policy));
  }
  EXPECT_DOUBLE_EQ(results["full"].bleu.score, 100.0);
  EXPECT_EQ(results["full"].character_accuracy, 1.0);
  EXPECT_LT(results["none"].bleu.score, 100.0);
  EXPECT_GE(results["p=0.1"].bleu.score, results["none"].bleu.score);
  EXPECT_LE(results["p=0.1"].bleu.score, results["full"].bleu.score);

  fs::path out = ToyConfig(dir, "full").out;
  for (const char* name : {"train.tsv", "valid.tsv", "test.tsv", "stats.txt",
                           "model.lm", "hyp.txt", "ref.txt", "eval.json",
                           "manifest.json"}) {
    EXPECT_TRUE(fs::exists(out / name)) << name;
  }
  auto manifest = nlohmann::json::parse(ReadTextFile((out / "manifest.json").string()));
  EXPECT_EQ(manifest["stage"], "pipeline");
  EXPECT_DOUBLE_EQ(manifest["results"]["bleu"].get<double>(), 100.0);
  auto eval = nlohmann::json::parse(ReadTextFile((out / "eval.json").string()));
  for (const char* key : {"score", "brevity_penalty", "precisions", "matches",
                          "totals", "max_n", "candidate_length",
                          "reference_length", "sentence_bleu"}) {
    EXPECT_TRUE(eval.contains(key)) << key;
  }
}

TEST(PipelineTest, NoHiddenState) {
  fs::path dir = ScratchDir("hidden");
  PipelineConfig config = ToyConfig(dir, "p=0.1");
  RunPipeline(config);
  auto digests = DirectoryDigests(config.out);
  fs::remove_all(config.out);
  RunPipeline(config);
  EXPECT_EQ(DirectoryDigests(config.out), digests);
  // Reusing the same output directory also gives the same bytes.
  RunPipeline(config);
  EXPECT_EQ(DirectoryDigests(config.out), digests);
}

}  // namespace
}  // namespace zhbraille
