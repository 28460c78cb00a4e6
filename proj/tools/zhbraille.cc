// zhbraille: Chinese braille toolkit command line.
//
// Exit status: 0 success, 1 internal error, 2 usage error, 3 I/O error,
// 4 malformed input (parse or validation), 5 data error (unknown character,
// undecodable braille, too little data, mismatched files).

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zhbraille/bleu.h"
#include "zhbraille/corpus.h"
#include "zhbraille/decoder.h"
#include "zhbraille/io.h"
#include "zhbraille/lexicon.h"
#include "zhbraille/ngram.h"
#include "zhbraille/pipeline.h"
#include "zhbraille/scheme.h"
#include "zhbraille/transcoder.h"
#include "zhbraille/utf8.h"

namespace zb = zhbraille;

namespace {

enum ExitCode {
  kExitOk = 0,
  kExitInternal = 1,
  kExitUsage = 2,
  kExitIo = 3,
  kExitInput = 4,
  kExitData = 5,
};

int ExitCodeFor(zb::ErrorKind kind) {
  switch (kind) {
    case zb::ErrorKind::kIo:
      return kExitIo;
    case zb::ErrorKind::kInvalidDot:
    case zb::ErrorKind::kNotBraille:
    case zb::ErrorKind::kDuplicateEntry:
    case zb::ErrorKind::kInjectivity:
    case zb::ErrorKind::kRoleConflict:
    case zb::ErrorKind::kIncompleteScheme:
    case zb::ErrorKind::kMalformedSyllable:
    case zb::ErrorKind::kParse:
      return kExitInput;
    case zb::ErrorKind::kUnknownCharacter:
    case zb::ErrorKind::kInsufficientData:
    case zb::ErrorKind::kEmptySplit:
    case zb::ErrorKind::kUndecodablePosition:
    case zb::ErrorKind::kPairedInput:
      return kExitData;
  }
  return kExitInternal;
}

// Runs `body` as the named stage so diagnostics say where a failure happened.
template <typename F>
void Stage(const std::string& name, F&& body) {
  try {
    body();
  } catch (const zb::StageError&) {
    throw;
  } catch (const zb::Error& e) {
    throw zb::StageError(name, e);
  }
}

// Attaches `path:line` to a failure on one input line.
template <typename F>
void AtLine(const std::string& path, std::size_t line, F&& body) {
  try {
    body();
  } catch (const zb::Error& e) {
    throw zb::Error(e.kind(), path + ":" + std::to_string(line) + ": " + e.what());
  }
}

void WriteOutput(const std::string& path, const std::string& contents) {
  if (path.empty() || path == "-") {
    std::cout << contents;
  } else {
    zb::WriteTextFile(path, contents);
  }
}

std::string ReadInput(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  return zb::ReadTextFile(path);
}

// Config keys settable from the command line, with their flag names.
struct ConfigFlags {
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  std::string config_file;
  std::string manifest_file;

  void Add(CLI::App* app, const std::string& key, const std::string& help) {
    std::string flag = "--" + key;
    for (auto& c : flag) {
      if (c == '_') c = '-';
    }
    options[key] = app->add_option(flag, values[key], help);
  }

  void AddCommon(CLI::App* app) {
    app->add_option("--config", config_file, "key = value configuration file");
    app->add_option("--manifest", manifest_file,
                    "reuse the configuration recorded in a manifest.json");
    Add(app, "corpus", "Leipzig sentence file (id<TAB>sentence)");
    Add(app, "scheme", "braille scheme table");
    Add(app, "lexicon", "pronunciation lexicon");
    Add(app, "tone_policy", "full, none, ten or p=<probability>");
    Add(app, "seed", "tone-retention seed");
    Add(app, "split_seed", "train/valid/test shuffle seed");
    Add(app, "ratios", "split ratios, e.g. 8:1:1");
    Add(app, "format", "tsv or jsonl");
    Add(app, "workers", "transcoding threads");
    Add(app, "out", "output directory");
  }

  // Defaults, then the config file or manifest, then flags.
  zb::PipelineConfig Resolve() const {
    zb::PipelineConfig config;
    if (!config_file.empty()) {
      config = zb::ParseConfig(zb::ReadTextFile(config_file), config_file);
    } else if (!manifest_file.empty()) {
      config = zb::ConfigFromManifest(zb::ReadTextFile(manifest_file),
                                      manifest_file);
    }
    for (const auto& [key, option] : options) {
      if (option->count() > 0) {
        config.Set(key, values.at(key), option->get_name());
      }
    }
    if (config.out.empty()) {
      throw zb::Error(zb::ErrorKind::kParse, "an output directory (--out) is required");
    }
    return config;
  }
};

void PrintVersion() {
  std::cout << "zhbraille " << zb::kToolkitVersion << "\n"
            << "manifest format " << zb::kManifestFormatVersion << "\n"
            << "scheme format " << zb::kSchemeFormatVersion << "\n"
            << "lexicon format " << zb::kLexiconFormatVersion << "\n"
            << "model format " << zb::kModelFormatVersion << "\n";
}

int Run(int argc, char** argv) {
  CLI::App app{"Chinese braille transcoding, dataset generation and decoding"};
  app.require_subcommand(0, 1);
  bool version = false;
  app.add_flag("--version", version, "print toolkit and file-format versions");

  // transcode
  auto* transcode = app.add_subcommand("transcode", "Chinese text to braille");
  std::string tr_text, tr_in, tr_out, tr_scheme, tr_lexicon;
  std::string tr_policy = "full";
  std::uint64_t tr_seed = 0, tr_index = 0;
  auto* tr_text_opt = transcode->add_option("--text", tr_text, "sentence to transcode");
  transcode->add_option("--in", tr_in, "one sentence per line ('-' for stdin)")
      ->excludes(tr_text_opt);
  transcode->add_option("--out", tr_out, "output file (default stdout)");
  transcode->add_option("--scheme", tr_scheme, "braille scheme table")->required();
  transcode->add_option("--lexicon", tr_lexicon, "pronunciation lexicon")->required();
  transcode->add_option("--tone-policy", tr_policy, "full, none, ten or p=<probability>");
  transcode->add_option("--seed", tr_seed, "tone-retention seed");
  transcode->add_option("--sentence-index", tr_index,
                        "index of the (first) sentence for tone draws");

  // gen-dataset
  auto* gen = app.add_subcommand("gen-dataset", "build train/valid/test splits");
  ConfigFlags gen_flags;
  gen_flags.AddCommon(gen);

  // stats
  auto* stats = app.add_subcommand("stats", "length statistics of generated splits");
  std::string st_dir;
  stats->add_option("--dir", st_dir, "directory with train/valid/test.tsv")->required();

  // train-lm
  auto* train = app.add_subcommand("train-lm", "train a character n-gram model");
  std::string lm_corpus, lm_out;
  int lm_order = 2;
  double lm_k = 0.01;
  train->add_option("--corpus", lm_corpus,
                    "sentences, one per line; the last tab field is used")
      ->required();
  train->add_option("--order", lm_order, "n-gram order (1-3)")
      ->check(CLI::Range(1, 3));
  train->add_option("--k", lm_k, "add-k smoothing constant")
      ->check(CLI::PositiveNumber);
  train->add_option("--out", lm_out, "model file")->required();

  // decode
  auto* decode = app.add_subcommand("decode", "braille to Chinese");
  std::string dc_model, dc_scheme, dc_lexicon, dc_in, dc_out;
  std::size_t dc_beam = 8;
  decode->add_option("--model", dc_model, "model written by train-lm")->required();
  decode->add_option("--scheme", dc_scheme, "braille scheme table")->required();
  decode->add_option("--lexicon", dc_lexicon, "pronunciation lexicon")->required();
  decode->add_option("--beam", dc_beam, "beam width")->check(CLI::PositiveNumber);
  decode->add_option("--in", dc_in,
                     "braille, one sentence per line; the first tab field is used")
      ->required();
  decode->add_option("--out", dc_out, "output file (default stdout)");

  // eval
  auto* eval = app.add_subcommand("eval", "corpus BLEU");
  std::string ev_hyp, ev_ref;
  int ev_max_n = 4;
  bool ev_json = false;
  eval->add_option("--hyp", ev_hyp, "hypotheses, one per line")->required();
  eval->add_option("--ref", ev_ref, "references, one per line")->required();
  eval->add_option("--max-n", ev_max_n, "highest n-gram order")->check(CLI::Range(1, 9));
  eval->add_flag("--json", ev_json, "JSON report with per-sentence scores");

  // pipeline
  auto* pipeline = app.add_subcommand("pipeline", "gen-dataset, train-lm, decode, eval");
  ConfigFlags pl_flags;
  pl_flags.AddCommon(pipeline);
  pl_flags.Add(pipeline, "order", "n-gram order (1-3)");
  pl_flags.Add(pipeline, "k", "add-k smoothing constant");
  pl_flags.Add(pipeline, "beam", "beam width");
  bool pl_dump = false;
  pipeline->add_flag("--print-config", pl_dump,
                     "print the resolved configuration and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  if (version) {
    PrintVersion();
    return kExitOk;
  }

  if (*transcode) {
    Stage("transcode", [&] {
      zb::Lexicon lexicon = zb::LoadLexiconFile(tr_lexicon);
      zb::BrailleScheme scheme = zb::LoadSchemeFile(tr_scheme, lexicon.inventory());
      zb::TonePolicy policy = zb::TonePolicy::Parse(tr_policy, tr_seed);
      std::vector<std::string> sentences;
      std::string source = "--text";
      if (tr_text_opt->count() > 0) {
        sentences.push_back(tr_text);
      } else {
        source = tr_in.empty() ? "-" : tr_in;
        std::string text = ReadInput(tr_in);
        for (auto line : zb::SplitLines(text)) sentences.emplace_back(line);
      }
      std::string out;
      for (std::size_t i = 0; i < sentences.size(); ++i) {
        AtLine(source, i + 1, [&] {
          out += zb::TranscodeSentence(sentences[i], scheme, lexicon, policy,
                                       tr_index + i)
                     .braille;
        });
        out += "\n";
      }
      WriteOutput(tr_out, out);
    });
  } else if (*gen) {
    zb::PipelineConfig config;
    Stage("config", [&] { config = gen_flags.Resolve(); });
    zb::GenDatasetResult result = zb::RunGenDataset(config);
    std::cerr << "wrote " << result.splits[0].pairs.size() << "/"
              << result.splits[1].pairs.size() << "/"
              << result.splits[2].pairs.size() << " pairs to " << config.out
              << " (" << result.corpus.skipped.size()
              << " sentences skipped)\n";
  } else if (*stats) {
    Stage("stats", [&] {
      std::array<zb::DatasetSplit, 3> splits;
      std::array<zb::SplitStats, 3> table;
      const char* files[3] = {"train.tsv", "valid.tsv", "test.tsv"};
      const char* names[3] = {"training", "validation", "test"};
      for (int s = 0; s < 3; ++s) {
        std::string path = (std::filesystem::path(st_dir) / files[s]).string();
        splits[s].name = names[s];
        splits[s].pairs = zb::ParseTsv(zb::ReadTextFile(path), path);
        table[s] = zb::ComputeStats(splits[s]);
      }
      std::cout << zb::RenderStatsTable(splits, table);
    });
  } else if (*train) {
    Stage("train-lm", [&] {
      auto sentences = zb::ReadTrainingSentences(zb::ReadTextFile(lm_corpus));
      zb::NgramModel model = zb::TrainNgram(sentences, lm_order, lm_k);
      zb::WriteTextFile(lm_out, model.Serialize());
      std::cerr << "trained order-" << model.order() << " model on "
                << sentences.size() << " sentences, vocabulary "
                << model.vocabulary_size() << "\n";
    });
  } else if (*decode) {
    Stage("decode", [&] {
      zb::NgramModel model =
          zb::NgramModel::Deserialize(zb::ReadTextFile(dc_model), dc_model);
      zb::Lexicon lexicon = zb::LoadLexiconFile(dc_lexicon);
      zb::BrailleScheme scheme = zb::LoadSchemeFile(dc_scheme, lexicon.inventory());
      std::string input = ReadInput(dc_in);
      std::string out;
      std::size_t line_no = 0;
      for (auto line : zb::SplitLines(input)) {
        ++line_no;
        auto tab = line.find('\t');
        if (tab != std::string_view::npos) line = line.substr(0, tab);
        AtLine(dc_in, line_no, [&] {
          out += zb::EncodeUtf8(
              zb::DecodeBraille(line, scheme, lexicon, model, dc_beam));
        });
        out += "\n";
      }
      WriteOutput(dc_out, out);
    });
  } else if (*eval) {
    Stage("eval", [&] {
      zb::SplitEvaluation evaluation = zb::EvaluateSplit(
          zb::ReadTextFile(ev_hyp), zb::ReadTextFile(ev_ref), ev_max_n);
      std::cout << (ev_json ? zb::EvaluationJson(evaluation)
                            : zb::FormatBleuReport(evaluation.corpus) + "\n");
    });
  } else if (*pipeline) {
    zb::PipelineConfig config;
    Stage("config", [&] { config = pl_flags.Resolve(); });
    if (pl_dump) {
      std::cout << zb::SerializeConfig(config);
      return kExitOk;
    }
    zb::PipelineResult result = zb::RunPipeline(config);
    std::cout << zb::FormatBleuReport(result.bleu) << "\n"
              << "character accuracy = " << result.character_accuracy << "\n";
  } else {
    std::cerr << app.help();
    return kExitUsage;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return Run(argc, argv);
  } catch (const zb::Error& e) {
    std::cerr << "zhbraille: error (" << zb::ErrorKindName(e.kind())
              << "): " << e.what() << "\n";
    return ExitCodeFor(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "zhbraille: internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}
