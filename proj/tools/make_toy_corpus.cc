// Writes the synthetic toy lexicon and sentence file.
//
//   make_toy_corpus --out data/toy

#include <filesystem>
#include <iostream>

#include "CLI11.hpp"
#include "zhbraille/io.h"
#include "zhbraille/toy.h"

int main(int argc, char** argv) {
  CLI::App app{"Generate the toy homophone corpus"};
  std::string out;
  zhbraille::ToyCorpusOptions options;
  app.add_option("--out", out, "output directory")->required();
  app.add_option("--sentences", options.sentences, "number of sentences");
  app.add_option("--seed", options.seed, "generator seed");
  CLI11_PARSE(app, argc, argv);

  try {
    std::filesystem::create_directories(out);
    auto corpus = zhbraille::MakeToyCorpus(options);
    zhbraille::WriteTextFile((std::filesystem::path(out) / "lexicon.tsv").string(),
                             corpus.lexicon);
    zhbraille::WriteTextFile(
        (std::filesystem::path(out) / "sentences.txt").string(), corpus.sentences);
  } catch (const std::exception& e) {
    std::cerr << "make_toy_corpus: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
