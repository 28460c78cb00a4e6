#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <map>

#include "test_data.h"
#include "zhbraille/io.h"
#include "zhbraille/toy.h"

namespace zhbraille {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;

struct RunResult {
  int status = -1;
  std::string out;
  std::string err;
};

fs::path Scratch() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "zhbraille_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string Quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'') {
      out += "'\\''";
    } else {
      out += c;
    }
  }
  return out + "'";
}

RunResult RunCli(const std::vector<std::string>& args) {
  std::string cmd = Quote(ZHB_CLI);
  for (const auto& a : args) cmd += " " + Quote(a);
  fs::path err = Scratch() / "stderr.txt";
  cmd += " 2>" + Quote(err.string());
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof(buf), pipe)) > 0) result.out.append(buf, n);
  int status = pclose(pipe);
  result.status = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.err = ReadTextFile(err.string());
  return result;
}

const std::string kScheme = DataPath("scheme/current_braille.tsv");
const std::string kLexicon = DataPath("lexicon/zh_lexicon.tsv");
const std::string kSample = DataPath("sample/sentences.txt");

std::map<std::string, std::string> Digests(const fs::path& dir) {
  std::map<std::string, std::string> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    out[e.path().filename().string()] = Sha256FileHex(e.path().string());
  }
  return out;
}

fs::path ToyDir() {
  fs::path dir = Scratch() / "toy";
  if (!fs::exists(dir / "sentences.txt")) {
    fs::create_directories(dir);
    ToyCorpus toy = MakeToyCorpus();
    WriteTextFile((dir / "lexicon.tsv").string(), toy.lexicon);
    WriteTextFile((dir / "sentences.txt").string(), toy.sentences);
  }
  return dir;
}

TEST(CliTest, Version) {
  auto r = RunCli({"--version"});
  EXPECT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("zhbraille 1.0.0"), std::string::npos);
  EXPECT_NE(r.out.find("manifest format 1"), std::string::npos);
  EXPECT_NE(r.out.find("model format 1"), std::string::npos);
}

TEST(CliTest, Transcode) {
  auto r = RunCli({"transcode", "--text", "我们今天去公园散步。", "--tone-policy",
                "full", "--scheme", kScheme, "--lexicon", kLexicon});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out, "⠕⠄⠍⠴ ⠛⠣⠁⠞⠩⠁ ⠅⠬⠆ ⠛⠲⠁⠯⠂ ⠎⠧⠆⠃⠥⠆\n");
  auto none = RunCli({"transcode", "--text", "我们", "--tone-policy", "none",
                   "--scheme", kScheme, "--lexicon", kLexicon});
  EXPECT_EQ(none.out, "⠕⠍⠴\n");
}

TEST(CliTest, GenDatasetDigestsStable) {
  std::map<std::string, std::string> first;
  for (int run = 0; run < 2; ++run) {
    fs::path out = Scratch() / ("gen" + std::to_string(run));
    auto r = RunCli({"gen-dataset", "--corpus", kSample, "--scheme", kScheme,
                  "--lexicon", kLexicon, "--tone-policy", "p=0.1", "--seed",
                  "11", "--split-seed", "12", "--out", out.string()});
    ASSERT_EQ(r.status, 0) << r.err;
    auto digests = Digests(out);
    EXPECT_EQ(digests.size(), 5u);
    if (run == 0) {
      first = digests;
    } else {
      EXPECT_EQ(digests, first);
    }
  }
  auto stats = RunCli({"stats", "--dir", (Scratch() / "gen0").string()});
  EXPECT_EQ(stats.status, 0) << stats.err;
  EXPECT_EQ(stats.out, ReadTextFile((Scratch() / "gen0" / "stats.txt").string()));
}

TEST(CliTest, EvalIdentity) {
  fs::path refs = Scratch() / "refs.txt";
  WriteTextFile(refs.string(), "我们今天去公园\n他是一个好老师\n");
  auto r = RunCli({"eval", "--hyp", refs.string(), "--ref", refs.string()});
  EXPECT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("BLEU = 100.00", 0), 0u) << r.out;
  auto json = RunCli({"eval", "--hyp", refs.string(), "--ref", refs.string(),
                   "--json", "--max-n", "2"});
  EXPECT_NE(json.out.find("\"score\": 100.0"), std::string::npos) << json.out;
  EXPECT_NE(json.out.find("\"max_n\": 2"), std::string::npos);
}

TEST(CliTest, TrainAndDecodeToy) {
  fs::path toy = ToyDir();
  fs::path out = Scratch() / "toy_full";
  auto gen = RunCli({"gen-dataset", "--corpus", (toy / "sentences.txt").string(),
                  "--scheme", kScheme, "--lexicon", (toy / "lexicon.tsv").string(),
                  "--tone-policy", "full", "--out", out.string()});
  ASSERT_EQ(gen.status, 0) << gen.err;
  auto train = RunCli({"train-lm", "--corpus", (out / "train.tsv").string(),
                    "--order", "2", "--k", "0.01", "--out",
                    (out / "model.lm").string()});
  ASSERT_EQ(train.status, 0) << train.err;
  auto decode = RunCli({"decode", "--model", (out / "model.lm").string(),
                     "--scheme", kScheme, "--lexicon",
                     (toy / "lexicon.tsv").string(), "--beam", "4", "--in",
                     (out / "test.tsv").string()});
  ASSERT_EQ(decode.status, 0) << decode.err;
  std::string expected;
  std::string test = ReadTextFile((out / "test.tsv").string());
  for (auto line : SplitLines(test)) {
    expected += std::string(line.substr(line.find('\t') + 1)) + "\n";
  }
  EXPECT_EQ(decode.out, expected);
}

TEST(CliTest, PipelineConfigOverridesAndManifestRerun) {
  fs::path toy = ToyDir();
  fs::path config = Scratch() / "pipeline.conf";
  fs::path out = Scratch() / "pipe";
  WriteTextFile(config.string(),
                "corpus = " + (toy / "sentences.txt").string() + "\n" +
                    "scheme = " + kScheme + "\n" + "lexicon = " +
                    (toy / "lexicon.tsv").string() + "\n" +
                    "tone_policy = none\nseed = 5\nsplit_seed = 6\n" +
                    "out = " + out.string() + "\n");
  auto printed = RunCli({"pipeline", "--config", config.string(), "--tone-policy",
                      "p=0.1", "--print-config"});
  EXPECT_EQ(printed.status, 0) << printed.err;
  EXPECT_NE(printed.out.find("tone_policy = p=0.1"), std::string::npos);
  EXPECT_NE(printed.out.find("seed = 5"), std::string::npos);

  auto r = RunCli({"pipeline", "--config", config.string(), "--tone-policy", "p=0.1"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("BLEU = "), std::string::npos);
  auto digests = Digests(out);
  EXPECT_EQ(digests.size(), 9u);

  fs::path manifest = Scratch() / "pipe_manifest.json";
  fs::copy_file(out / "manifest.json", manifest,
                fs::copy_options::overwrite_existing);
  fs::path again = Scratch() / "pipe_again";
  auto rerun = RunCli({"pipeline", "--manifest", manifest.string(), "--out",
                    again.string()});
  ASSERT_EQ(rerun.status, 0) << rerun.err;
  EXPECT_EQ(Digests(again), digests);
}

TEST(CliTest, ExitCodes) {
  fs::path refs = Scratch() / "two.txt";
  fs::path one = Scratch() / "one.txt";
  WriteTextFile(refs.string(), "甲\n乙\n");
  WriteTextFile(one.string(), "甲\n");
  fs::path bad_scheme = Scratch() / "bad_scheme.tsv";
  WriteTextFile(bad_scheme.string(), "[initials]\nb\tX\n");

  // usage
  EXPECT_EQ(RunCli({}).status, 2);
  EXPECT_EQ(RunCli({"eval", "--bogus"}).status, 2);
  EXPECT_EQ(RunCli({"frobnicate"}).status, 2);
  EXPECT_EQ(RunCli({"train-lm", "--corpus", "x"}).status, 2);  // --out missing
  // missing file
  auto missing = RunCli({"eval", "--hyp", "/nonexistent/h", "--ref", refs.string()});
  EXPECT_EQ(missing.status, 3);
  EXPECT_NE(missing.err.find("eval"), std::string::npos);
  EXPECT_NE(missing.err.find("/nonexistent/h"), std::string::npos);
  // parse failure, with stage and location
  auto parse = RunCli({"transcode", "--text", "我", "--scheme", bad_scheme.string(),
                    "--lexicon", kLexicon});
  EXPECT_EQ(parse.status, 4);
  EXPECT_NE(parse.err.find("transcode"), std::string::npos);
  EXPECT_NE(parse.err.find("bad_scheme.tsv:2"), std::string::npos) << parse.err;
  // data errors
  EXPECT_EQ(RunCli({"eval", "--hyp", refs.string(), "--ref", one.string()}).status, 5);
  auto unknown = RunCli({"transcode", "--text", "我\U00030000", "--scheme", kScheme,
                      "--lexicon", kLexicon});
  EXPECT_EQ(unknown.status, 5);

  fs::path braille = Scratch() / "braille.txt";
  WriteTextFile(braille.string(), "⠔\n⠃⠃\n");
  fs::path model = Scratch() / "m.lm";
  ASSERT_EQ(RunCli({"train-lm", "--corpus", refs.string(), "--out", model.string()})
                .status,
            0);
  auto malformed = RunCli({"decode", "--model", model.string(), "--scheme", kScheme,
                        "--lexicon", kLexicon, "--in", braille.string()});
  EXPECT_EQ(malformed.status, 4);
  EXPECT_NE(malformed.err.find("braille.txt:2"), std::string::npos) << malformed.err;
}

}  // namespace
}  // namespace zhbraille
