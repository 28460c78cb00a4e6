#include "zhbraille/pipeline.h"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <filesystem>

#include "json.hpp"
#include "zhbraille/decoder.h"
#include "zhbraille/io.h"
#include "zhbraille/lexicon.h"
#include "zhbraille/ngram.h"
#include "zhbraille/scheme.h"
#include "zhbraille/utf8.h"

namespace zhbraille {

using Json = nlohmann::ordered_json;

namespace {

std::string FormatDouble(double value) {
  char buf[32];
  for (int precision = 1; precision <= 17; ++precision) {
    std::snprintf(buf, sizeof(buf), "%.*g", precision, value);
    if (std::strtod(buf, nullptr) == value) break;
  }
  return buf;
}

template <typename T>
T ParseUnsigned(const std::string& value, const std::string& key,
                const std::string& source, std::size_t line) {
  T out{};
  auto [end, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (value.empty() || ec != std::errc() || end != value.data() + value.size()) {
    throw ParseError(source, line,
                     key + " must be a non-negative integer, got '" + value + "'");
  }
  return out;
}

}  // namespace

std::string FormatRatios(const SplitRatios& r) {
  return std::to_string(r.training) + ":" + std::to_string(r.validation) + ":" +
         std::to_string(r.test);
}

SplitRatios ParseRatios(std::string_view text) {
  unsigned parts[3];
  std::string_view rest = text;
  for (int i = 0; i < 3; ++i) {
    auto colon = rest.find(':');
    if ((i < 2) == (colon == std::string_view::npos)) {
      throw Error(ErrorKind::kParse, "ratios must look like 8:1:1");
    }
    auto piece = rest.substr(0, colon);
    auto [end, ec] = std::from_chars(piece.data(), piece.data() + piece.size(),
                                     parts[i]);
    if (piece.empty() || ec != std::errc() ||
        end != piece.data() + piece.size() || parts[i] == 0) {
      throw Error(ErrorKind::kParse, "ratios must be positive integers like 8:1:1");
    }
    rest.remove_prefix(colon == std::string_view::npos ? rest.size() : colon + 1);
  }
  return {parts[0], parts[1], parts[2]};
}

std::map<std::string, std::string> PipelineConfig::ToMap() const {
  return {
      {"corpus", corpus},
      {"scheme", scheme},
      {"lexicon", lexicon},
      {"tone_policy", tone_policy},
      {"seed", std::to_string(seed)},
      {"split_seed", std::to_string(split_seed)},
      {"ratios", FormatRatios(ratios)},
      {"order", std::to_string(order)},
      {"k", FormatDouble(k)},
      {"beam", std::to_string(beam)},
      {"format", format},
      {"workers", std::to_string(workers)},
      {"out", out},
  };
}

void PipelineConfig::Set(const std::string& key, const std::string& value,
                         const std::string& source, std::size_t line) {
  try {
    if (key == "corpus") {
      corpus = value;
    } else if (key == "scheme") {
      scheme = value;
    } else if (key == "lexicon") {
      lexicon = value;
    } else if (key == "tone_policy") {
      TonePolicy::Parse(value, 0);
      tone_policy = value;
    } else if (key == "seed") {
      seed = ParseUnsigned<std::uint64_t>(value, key, source, line);
    } else if (key == "split_seed") {
      split_seed = ParseUnsigned<std::uint64_t>(value, key, source, line);
    } else if (key == "ratios") {
      ratios = ParseRatios(value);
    } else if (key == "order") {
      order = static_cast<int>(ParseUnsigned<unsigned>(value, key, source, line));
      if (order < 1 || order > 3) {
        throw Error(ErrorKind::kParse, "order must be 1, 2 or 3");
      }
    } else if (key == "k") {
      char* end = nullptr;
      k = std::strtod(value.c_str(), &end);
      if (value.empty() || *end || !(k > 0)) {
        throw Error(ErrorKind::kParse, "k must be a positive number");
      }
    } else if (key == "beam") {
      beam = ParseUnsigned<std::size_t>(value, key, source, line);
      if (beam == 0) throw Error(ErrorKind::kParse, "beam must be >= 1");
    } else if (key == "format") {
      if (value != "tsv" && value != "jsonl") {
        throw Error(ErrorKind::kParse, "format must be tsv or jsonl");
      }
      format = value;
    } else if (key == "workers") {
      workers = ParseUnsigned<unsigned>(value, key, source, line);
    } else if (key == "out") {
      out = value;
    } else {
      throw ParseError(source, line, "unknown config key '" + key + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(source, line, key + ": " + e.what());
  }
}

bool operator==(const PipelineConfig& a, const PipelineConfig& b) {
  return a.ToMap() == b.ToMap();
}

std::string SerializeConfig(const PipelineConfig& config) {
  std::string out = "# zhbraille pipeline configuration\n";
  for (const auto& [key, value] : config.ToMap()) {
    out += key + " = " + value + "\n";
  }
  return out;
}

PipelineConfig ParseConfig(std::string_view text, const std::string& source) {
  PipelineConfig config;
  std::size_t line_no = 0;
  for (std::string_view line : SplitLines(text)) {
    ++line_no;
    std::string_view stripped = StripSpace(line);
    if (stripped.empty() || stripped.front() == '#') continue;
    auto eq = stripped.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError(source, line_no, "expected key = value");
    }
    config.Set(std::string(StripSpace(stripped.substr(0, eq))),
               std::string(StripSpace(stripped.substr(eq + 1))), source, line_no);
  }
  return config;
}

PipelineConfig ConfigFromManifest(std::string_view manifest_json,
                                  const std::string& source) {
  Json manifest;
  try {
    manifest = Json::parse(manifest_json);
  } catch (const Json::exception& e) {
    throw ParseError(source, 1, std::string("invalid JSON: ") + e.what());
  }
  if (!manifest.contains("config") || !manifest["config"].is_object()) {
    throw ParseError(source, 1, "manifest has no config object");
  }
  PipelineConfig config;
  for (const auto& [key, value] : manifest["config"].items()) {
    if (!value.is_string()) {
      throw ParseError(source, 1, "config value for '" + key + "' is not a string");
    }
    config.Set(key, value.get<std::string>(), source, 1);
  }
  return config;
}

std::u32string HanOnly(std::string_view text) {
  std::u32string out;
  for (char32_t c : DecodeUtf8(text)) {
    if (IsHanCharacter(c)) out.push_back(c);
  }
  return out;
}

std::vector<std::u32string> ReadTrainingSentences(std::string_view text) {
  std::vector<std::u32string> sentences;
  for (std::string_view line : SplitLines(text)) {
    auto tab = line.rfind('\t');
    if (tab != std::string_view::npos) line.remove_prefix(tab + 1);
    if (StripSpace(line).empty()) continue;
    sentences.push_back(HanOnly(line));
  }
  return sentences;
}

namespace {

struct LoadedInputs {
  Lexicon lexicon;
  BrailleScheme scheme;
  std::vector<IndexedSentence> sentences;
  TonePolicy policy{0.0, 0};
};

template <typename F>
auto InStage(const std::string& stage, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  }
}

LoadedInputs LoadInputs(const PipelineConfig& config) {
  return InStage("load", [&] {
    if (config.corpus.empty() || config.scheme.empty() ||
        config.lexicon.empty()) {
      throw Error(ErrorKind::kParse, "corpus, scheme and lexicon are required");
    }
    Lexicon lexicon = LoadLexiconFile(config.lexicon);
    BrailleScheme scheme = LoadSchemeFile(config.scheme, lexicon.inventory());
    auto sentences =
        IngestSentences(ReadTextFile(config.corpus), config.corpus);
    TonePolicy policy = TonePolicy::Parse(config.tone_policy, config.seed);
    return LoadedInputs{std::move(lexicon), std::move(scheme),
                        std::move(sentences), policy};
  });
}

std::string OutputPath(const PipelineConfig& config, const std::string& name) {
  return (std::filesystem::path(config.out) / name).string();
}

void WriteArtifact(const PipelineConfig& config, Json& outputs,
                   const std::string& name, const std::string& contents) {
  WriteTextFile(OutputPath(config, name), contents);
  outputs[name] = Sha256Hex(contents);
}

Json ConfigJson(const PipelineConfig& config) {
  Json out = Json::object();
  for (const auto& [key, value] : config.ToMap()) {
    // The output directory is not part of what the artifacts depend on.
    if (key == "out") continue;
    out[key] = value;
  }
  return out;
}

Json InputJson(const std::string& path) {
  return Json{{"path", path}, {"sha256", Sha256FileHex(path)}};
}

struct DatasetArtifacts {
  GenDatasetResult result;
  Json manifest;
};

DatasetArtifacts GenerateDataset(const PipelineConfig& config,
                                 const LoadedInputs& inputs, Json& outputs) {
  return InStage("gen-dataset", [&] {
    std::filesystem::create_directories(config.out);
    GenDatasetResult result;
    result.sentences = inputs.sentences.size();
    result.corpus = BuildParallelCorpus(inputs.sentences, inputs.scheme,
                                        inputs.lexicon, inputs.policy,
                                        config.workers);
    result.splits =
        SplitDataset(result.corpus.pairs, config.ratios, config.split_seed);
    for (int s = 0; s < 3; ++s) result.stats[s] = ComputeStats(result.splits[s]);

    const char* names[3] = {"train", "valid", "test"};
    for (int s = 0; s < 3; ++s) {
      const bool jsonl = config.format == "jsonl";
      WriteArtifact(config, outputs,
                    std::string(names[s]) + (jsonl ? ".jsonl" : ".tsv"),
                    jsonl ? FormatJsonl(result.splits[s].pairs)
                          : FormatTsv(result.splits[s].pairs));
    }
    WriteArtifact(config, outputs, "stats.txt",
                  RenderStatsTable(result.splits, result.stats));

    const auto& c = result.corpus;
    Json manifest;
    manifest["format_version"] = kManifestFormatVersion;
    manifest["toolkit_version"] = std::string(kToolkitVersion);
    manifest["config"] = ConfigJson(config);
    manifest["inputs"] = {{"corpus", InputJson(config.corpus)},
                          {"scheme", InputJson(config.scheme)},
                          {"lexicon", InputJson(config.lexicon)}};
    manifest["tone_policy"] = {
        {"name", inputs.policy.name()},
        {"retain_probability", inputs.policy.retain_probability()},
        {"seed", inputs.policy.seed()}};
    manifest["split"] = {{"seed", config.split_seed},
                         {"ratios", FormatRatios(config.ratios)}};
    manifest["counts"] = {
        {"sentences", result.sentences},
        {"pairs", c.pairs.size()},
        {"skipped_unknown_character", c.skipped.size()},
        {"dropped_characters", c.dropped_characters},
        {"empty_pairs", c.empty_pairs},
        {"syllables", c.syllables},
        {"tone_bearing_syllables", c.tone_bearing_syllables},
        {"retained_tones", c.retained_tones},
        {"training", result.splits[0].pairs.size()},
        {"validation", result.splits[1].pairs.size()},
        {"test", result.splits[2].pairs.size()}};
    Json skipped = Json::array();
    for (const auto& s : c.skipped) {
      skipped.push_back({{"idx", s.sentence_index}, {"reason", s.reason}});
    }
    manifest["skipped"] = std::move(skipped);
    return DatasetArtifacts{std::move(result), std::move(manifest)};
  });
}

std::string DumpJson(const Json& json) {
  return json.dump(2, ' ', false, Json::error_handler_t::replace) + "\n";
}

}  // namespace

std::string EvaluationJson(const SplitEvaluation& evaluation) {
  const auto& r = evaluation.corpus;
  Json out;
  out["score"] = r.score;
  out["brevity_penalty"] = r.brevity_penalty;
  out["precisions"] = r.precisions;
  out["matches"] = r.matches;
  out["totals"] = r.totals;
  out["max_n"] = r.max_n;
  out["candidate_length"] = r.candidate_length;
  out["reference_length"] = r.reference_length;
  out["sentence_bleu"] = evaluation.sentence_scores;
  return DumpJson(out);
}

GenDatasetResult RunGenDataset(const PipelineConfig& config) {
  LoadedInputs inputs = LoadInputs(config);
  Json outputs = Json::object();
  DatasetArtifacts artifacts = GenerateDataset(config, inputs, outputs);
  artifacts.manifest["stage"] = "gen-dataset";
  artifacts.manifest["outputs"] = outputs;
  WriteTextFile(OutputPath(config, "manifest.json"), DumpJson(artifacts.manifest));
  return std::move(artifacts.result);
}

PipelineResult RunPipeline(const PipelineConfig& config) {
  LoadedInputs inputs = LoadInputs(config);
  Json outputs = Json::object();
  DatasetArtifacts artifacts = GenerateDataset(config, inputs, outputs);
  const auto& splits = artifacts.result.splits;

  NgramModel model = InStage("train-lm", [&] {
    std::vector<std::u32string> sentences;
    for (const auto& pair : splits[0].pairs) {
      sentences.push_back(HanOnly(pair.chinese));
    }
    NgramModel trained = TrainNgram(sentences, config.order, config.k);
    WriteArtifact(config, outputs, "model.lm", trained.Serialize());
    return trained;
  });

  std::string hypotheses, references;
  double accuracy_sum = 0;
  InStage("decode", [&] {
    for (const auto& pair : splits[2].pairs) {
      std::u32string hyp = DecodeBraille(pair.braille, inputs.scheme,
                                         inputs.lexicon, model, config.beam);
      std::u32string ref = HanOnly(pair.chinese);
      accuracy_sum += CharacterAccuracy(hyp, ref);
      hypotheses += EncodeUtf8(hyp) + "\n";
      references += EncodeUtf8(ref) + "\n";
    }
    WriteArtifact(config, outputs, "hyp.txt", hypotheses);
    WriteArtifact(config, outputs, "ref.txt", references);
  });

  PipelineResult result;
  InStage("eval", [&] {
    SplitEvaluation evaluation = EvaluateSplit(hypotheses, references);
    WriteArtifact(config, outputs, "eval.json", EvaluationJson(evaluation));
    result.bleu = evaluation.corpus;
  });
  result.character_accuracy =
      accuracy_sum / static_cast<double>(splits[2].pairs.size());

  Json& manifest = artifacts.manifest;
  manifest["stage"] = "pipeline";
  manifest["language_model"] = {{"order", model.order()},
                                {"k", model.k()},
                                {"vocabulary", model.vocabulary_size()},
                                {"ngrams", model.distinct_ngrams()}};
  manifest["results"] = {{"bleu", result.bleu.score},
                         {"character_accuracy", result.character_accuracy}};
  manifest["outputs"] = outputs;
  WriteTextFile(OutputPath(config, "manifest.json"), DumpJson(manifest));
  result.dataset = std::move(artifacts.result);
  return result;
}

}  // namespace zhbraille
