#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "zhbraille/bleu.h"
#include "zhbraille/corpus.h"
#include "zhbraille/error.h"

namespace zhbraille {

inline constexpr std::string_view kToolkitVersion = "1.0.0";
inline constexpr int kManifestFormatVersion = 1;
inline constexpr int kSchemeFormatVersion = 1;
inline constexpr int kLexiconFormatVersion = 1;
inline constexpr int kModelFormatVersion = 1;

// Wraps a failure with the pipeline stage it came from; keeps the kind.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error(cause.kind(), stage + ": " + cause.what()),
        stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

struct PipelineConfig {
  std::string corpus;
  std::string scheme;
  std::string lexicon;
  std::string tone_policy = "p=0.1";
  std::uint64_t seed = 0;
  std::uint64_t split_seed = 0;
  SplitRatios ratios;
  int order = 2;
  double k = 0.01;
  std::size_t beam = 8;
  std::string format = "tsv";  // tsv or jsonl
  unsigned workers = 1;
  std::string out;

  // Key/value view in a fixed key order; values round-trip exactly.
  std::map<std::string, std::string> ToMap() const;
  // Unknown keys throw ParseError.
  void Set(const std::string& key, const std::string& value,
           const std::string& source_name = "<config>", std::size_t line = 0);

  friend bool operator==(const PipelineConfig&, const PipelineConfig&);
};

// Flat `key = value` lines, `#` comments.
std::string SerializeConfig(const PipelineConfig& config);
PipelineConfig ParseConfig(std::string_view text,
                           const std::string& source_name = "<config>");
// Reads the "config" object of a manifest written by RunPipeline or
// RunGenDataset.
PipelineConfig ConfigFromManifest(std::string_view manifest_json,
                                  const std::string& source_name = "<manifest>");

std::string FormatRatios(const SplitRatios& ratios);
SplitRatios ParseRatios(std::string_view text);

// Keeps Han characters only; this is the text the decoder can produce.
std::u32string HanOnly(std::string_view text);

// Lines of a sentence file: the last tab-separated field of each line.
std::vector<std::u32string> ReadTrainingSentences(std::string_view text);

struct GenDatasetResult {
  ParallelCorpus corpus;
  std::array<DatasetSplit, 3> splits;
  std::array<SplitStats, 3> stats;
  std::size_t sentences = 0;
};

// Writes train/valid/test (.tsv or .jsonl), stats.txt and manifest.json into
// config.out.
GenDatasetResult RunGenDataset(const PipelineConfig& config);

struct PipelineResult {
  GenDatasetResult dataset;
  BleuReport bleu;
  double character_accuracy = 0;  // mean over test sentences
};

// JSON with every BleuReport field plus per-sentence smoothed scores.
std::string EvaluationJson(const SplitEvaluation& evaluation);

// gen-dataset -> train-lm (training Chinese) -> decode (test braille) -> eval.
// Artifacts: the dataset files, model.lm, hyp.txt, ref.txt, eval.json and
// manifest.json. Stage failures throw StageError.
PipelineResult RunPipeline(const PipelineConfig& config);

}  // namespace zhbraille
