#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "patchrank/pipeline.hpp"
#include "patchrank/tokenizer.hpp"

using namespace patchrank;

namespace {

void add_common_options(CLI::App* cmd, RunConfig& config, std::string& metric) {
  cmd->add_option("--corpus", config.corpus_root, "Corpus root directory")->required();
  cmd->add_option("--out", config.out_root, "Output directory")->required();
  cmd->add_option("--dim", config.embedding.dim, "Embedding dimensionality");
  cmd->add_option("--window", config.embedding.window, "Context window size");
  cmd->add_option("--min-count", config.embedding.min_count, "Minimum token frequency");
  cmd->add_option("--epochs", config.embedding.epochs, "Training epochs");
  cmd->add_option("--negative", config.embedding.negative_samples, "Negative samples per step");
  cmd->add_option("--radius", config.radius, "Snippet window radius in lines");
  cmd->add_option("--seed", config.embedding.seed, "RNG seed");
  cmd->add_option("--metric", metric, "Similarity metric: cosine | cosmul");
  cmd->add_flag("--nondeterministic-parallel", config.parallel,
                "Process bugs concurrently (output order no longer deterministic)");
}

int run_tokenize(const std::string& file) {
  std::string text;
  if (file == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read " << file << "\n";
      return kExitHardError;
    }
    text.assign(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
  }
  for (const auto& token : tokenize(text)) std::cout << token << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Patch-similarity ranking and evaluation toolkit"};
  app.require_subcommand(1);

  RunConfig config;
  std::string metric = "cosmul";
  std::string annotator = "anonymous";
  std::string tokenize_file = "-";

  CLI::App* pipeline = app.add_subcommand("pipeline", "Run the whole pipeline");
  add_common_options(pipeline, config, metric);
  CLI::App* ingest = app.add_subcommand("ingest", "Validate the corpus and extract snippets");
  add_common_options(ingest, config, metric);
  CLI::App* train_cmd = app.add_subcommand("train", "Train one embedding model per bug");
  add_common_options(train_cmd, config, metric);
  CLI::App* rank = app.add_subcommand("rank", "Rank patch variants against the original");
  add_common_options(rank, config, metric);
  CLI::App* eval = app.add_subcommand("eval", "Score rankings against annotations");
  add_common_options(eval, config, metric);
  CLI::App* report = app.add_subcommand("report", "Emit CSV summary and SVG charts");
  add_common_options(report, config, metric);

  CLI::App* annotate = app.add_subcommand("annotate", "Interactively annotate candidates");
  annotate->add_option("--corpus", config.corpus_root, "Corpus root directory")->required();
  annotate->add_option("--annotator", annotator, "Annotator id recorded in the files");

  CLI::App* tok = app.add_subcommand("tokenize", "Print tokens of a file, one per line");
  tok->add_option("file", tokenize_file, "Input file ('-' for stdin)");

  CLI11_PARSE(app, argc, argv);

  try {
    config.metric = metric_from_string(metric);
    if (pipeline->parsed()) return run_pipeline(config, std::cerr);
    if (ingest->parsed()) return cmd_ingest(config, std::cerr);
    if (train_cmd->parsed()) return cmd_train(config, std::cerr);
    if (rank->parsed()) return cmd_rank(config, std::cerr);
    if (eval->parsed()) return cmd_eval(config, std::cerr);
    if (report->parsed()) return cmd_report(config, std::cerr);
    if (annotate->parsed()) return cmd_annotate(config, annotator, std::cin, std::cout, std::cerr);
    if (tok->parsed()) return run_tokenize(tokenize_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitHardError;
  }
  return kExitHardError;
}
