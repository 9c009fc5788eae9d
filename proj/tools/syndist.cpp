// Command-line front end: encode, decode, roundtrip, train, predict, score,
// bench, generate.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "syndist/bench.hpp"
#include "syndist/errors.hpp"
#include "syndist/learning/trainer.hpp"
#include "syndist/pipeline.hpp"
#include "syndist/scorer.hpp"
#include "syndist/synthetic.hpp"
#include "syndist/tuple_io.hpp"

namespace {

using namespace syndist;
namespace sl = syndist::learning;

std::string current_file = "-";

std::string read_file(const std::string& path) {
  current_file = path;
  if (path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open '" + path + "'");
  return std::string(std::istreambuf_iterator<char>(in), {});
}

// Writes to `path`, or stdout when empty or "-".
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw UsageError("cannot write '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string one_line(std::string s) {
  for (auto& c : s) {
    if (c == '\n' || c == '\r') c = ' ';
  }
  return s;
}

template <typename T>
std::vector<T> split_list(const std::string& csv, T (*parse)(std::string_view)) {
  std::vector<T> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  return out;
}

std::size_t parse_size(std::string_view s) {
  std::size_t pos = 0;
  const std::string str(s);
  const auto v = std::stoull(str, &pos);
  if (pos != str.size()) throw UsageError("bad size '" + str + "'");
  return static_cast<std::size_t>(v);
}

nlohmann::json run_metadata(const std::string& command, std::uint64_t seed,
                            const std::vector<std::string>& argv) {
  return {{"tool", "syndist"},
          {"version", std::string(kVersion)},
          {"command", command},
          {"seed", seed},
          {"argv", argv}};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  CLI::App app{"Syntactic-distance constituency parsing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kVersion));

  std::string engine_name = "rmq";
  std::uint64_t seed = 1;
  std::string out_path;

  auto add_engine = [&](CLI::App* cmd) {
    cmd->add_option("--engine", engine_name, "decoder engine: scan, rmq or stack")
        ->check(CLI::IsMember({"scan", "rmq", "stack"}));
  };

  // encode
  std::string encode_in;
  auto* encode_cmd = app.add_subcommand("encode", "bracketed treebank -> distance tuples (JSONL)");
  encode_cmd->add_option("treebank", encode_in, "input treebank ('-' for stdin)")->required();
  encode_cmd->add_option("--out", out_path, "output file (default stdout)");

  // decode
  std::string decode_in;
  auto* decode_cmd = app.add_subcommand("decode", "distance tuples (JSONL) -> bracketed trees");
  decode_cmd->add_option("tuples", decode_in, "input JSONL ('-' for stdin)")->required();
  decode_cmd->add_option("--out", out_path, "output file (default stdout)");
  add_engine(decode_cmd);

  // roundtrip
  std::string roundtrip_in;
  auto* roundtrip_cmd =
      app.add_subcommand("roundtrip", "encode then decode every tree and report mismatches");
  roundtrip_cmd->add_option("treebank", roundtrip_in, "input treebank")->required();
  roundtrip_cmd->add_option("--out", out_path, "report file (default stdout)");
  add_engine(roundtrip_cmd);

  // train
  std::string train_in, dev_in, config_path, metrics_path;
  int epochs = -1;
  auto* train_cmd = app.add_subcommand("train", "train a distance model");
  train_cmd->add_option("train", train_in, "training treebank or JSONL")->required();
  train_cmd->add_option("--dev", dev_in, "development treebank or JSONL");
  train_cmd->add_option("--config", config_path, "flat key = value configuration file");
  train_cmd->add_option("--epochs", epochs, "number of epochs (overrides config)");
  train_cmd->add_option("--seed", seed, "random seed (overrides config)");
  train_cmd->add_option("--out", out_path, "checkpoint path")->required();
  train_cmd->add_option("--metrics", metrics_path, "per-epoch metrics JSONL (default stderr)");
  add_engine(train_cmd);

  // predict
  std::string model_path, predict_in;
  auto* predict_cmd = app.add_subcommand("predict", "parse sentences with a trained model");
  predict_cmd->add_option("--model", model_path, "checkpoint path")->required();
  predict_cmd->add_option("input", predict_in, "treebank or JSONL supplying words and tags")
      ->required();
  predict_cmd->add_option("--out", out_path, "output file (default stdout)");
  add_engine(predict_cmd);

  // score
  std::string gold_in, pred_in;
  bool as_json = false;
  auto* score_cmd = app.add_subcommand("score", "labeled/unlabeled bracket scores");
  score_cmd->add_option("gold", gold_in, "gold treebank")->required();
  score_cmd->add_option("pred", pred_in, "predicted treebank")->required();
  score_cmd->add_flag("--json", as_json, "machine-readable report");
  score_cmd->add_option("--out", out_path, "report file (default stdout)");

  // bench
  std::string sizes_csv = "1000,2000,4000,8000", engines_csv = "scan,rmq,stack",
              shapes_csv = "random,left-chain,right-chain";
  int reps = 20;
  auto* bench_cmd = app.add_subcommand("bench", "decoder timing table (CSV)");
  bench_cmd->add_option("--sizes", sizes_csv, "comma-separated sentence lengths");
  bench_cmd->add_option("--engines", engines_csv, "comma-separated engines");
  bench_cmd->add_option("--shapes", shapes_csv, "random, left-chain, right-chain");
  bench_cmd->add_option("--reps", reps, "repetitions per cell")->check(CLI::Range(20, 1000000));
  bench_cmd->add_option("--seed", seed, "seed for random inputs");
  bench_cmd->add_option("--out", out_path, "CSV file (default stdout)");

  // generate
  std::size_t sentences = 2000, max_length = 20;
  auto* generate_cmd = app.add_subcommand("generate", "sample a synthetic PCFG treebank");
  generate_cmd->add_option("--sentences", sentences, "number of trees");
  generate_cmd->add_option("--max-length", max_length, "maximum sentence length");
  generate_cmd->add_option("--seed", seed, "random seed");
  generate_cmd->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: kind=usage msg=" << one_line(e.what()) << '\n';
    return 2;
  }

  try {
    const Engine engine = parse_engine(engine_name);

    if (*encode_cmd) {
      Output out(out_path);
      const auto stats = encode_treebank(read_file(encode_in), out.stream());
      if (stats.skipped > 0)
        std::cerr << "warning: skipped " << stats.skipped << " empty tree(s)\n";
    } else if (*decode_cmd) {
      Output out(out_path);
      std::istringstream in(read_file(decode_in));
      decode_jsonl(in, engine, out.stream());
    } else if (*roundtrip_cmd) {
      Output out(out_path);
      const auto report = roundtrip_treebank(read_file(roundtrip_in), engine);
      out.stream() << format_roundtrip(report);
      return report.mismatches == 0 ? 0 : 1;
    } else if (*train_cmd) {
      sl::TrainConfig config;
      if (!config_path.empty()) {
        std::istringstream in(read_file(config_path));
        config = sl::load_config(in, config);
      }
      if (epochs >= 0) config.epochs = epochs;
      if (train_cmd->count("--seed") > 0) config.seed = seed;
      if (train_cmd->count("--engine") > 0) config.engine = engine;

      const auto corpus = load_corpus(read_file(train_in));
      const auto dev = dev_in.empty() ? std::vector<DistanceTuple>{} : load_corpus(read_file(dev_in));

      Output metrics(metrics_path);
      std::ostream& log = metrics_path.empty() ? std::cerr : metrics.stream();
      auto meta = run_metadata("train", config.seed, args);
      meta["config"] = config.to_map();
      log << nlohmann::json{{"run", meta}}.dump() << '\n';
      const auto result = sl::train(corpus, dev, config, [&](const sl::EpochMetrics& m) {
        log << nlohmann::json{{"epoch", m.epoch},
                              {"distance_loss", m.distance_loss},
                              {"label_loss", m.label_loss},
                              {"dev_labeled_f1", m.dev_labeled_f1},
                              {"dev_unlabeled_f1", m.dev_unlabeled_f1},
                              {"dev_word_label_accuracy", m.dev_word_label_accuracy}}
                   .dump()
            << '\n';
      });
      log << nlohmann::json{{"best_epoch", result.best_epoch}}.dump() << '\n';

      std::map<std::string, std::string> ckpt_meta = config.to_map();
      ckpt_meta["version"] = std::string(kVersion);
      ckpt_meta["best_epoch"] = std::to_string(result.best_epoch);
      ckpt_meta["train_sentences"] = std::to_string(corpus.size());
      Output out(out_path);
      sl::save_checkpoint(result.model, out.stream(), ckpt_meta);
    } else if (*predict_cmd) {
      std::istringstream ckpt(read_file(model_path));
      const auto model = sl::load_checkpoint(ckpt);
      Output out(out_path);
      for (const auto& t : load_corpus(read_file(predict_in)))
        out.stream() << serialize_bracketed(sl::predict_tree(model, t.words, t.tags, engine))
                     << '\n';
    } else if (*score_cmd) {
      const auto gold = load_treebank(read_file(gold_in));
      const auto pred = load_treebank(read_file(pred_in));
      const auto report = score(gold, pred);
      Output out(out_path);
      out.stream() << (as_json ? report_json(report) + "\n" : format_report(report));
    } else if (*bench_cmd) {
      BenchOptions options;
      options.sizes = split_list<std::size_t>(sizes_csv, parse_size);
      options.engines = split_list<Engine>(engines_csv, parse_engine);
      options.shapes = split_list<Shape>(shapes_csv, parse_shape);
      options.repetitions = reps;
      options.seed = seed;
      stabilize_allocator();
      const auto rows = run_bench(options);
      Output out(out_path);
      out.stream() << "# " << run_metadata("bench", seed, args).dump() << '\n' << bench_csv(rows);
    } else if (*generate_cmd) {
      PcfgOptions options;
      options.sentences = sentences;
      options.max_length = max_length;
      options.seed = seed;
      Output out(out_path);
      for (const auto& t : generate_pcfg_corpus(options))
        out.stream() << serialize_bracketed(t) << '\n';
    }
  } catch (const ParseError& e) {
    std::cerr << "error: kind=parse file=" << current_file << " offset=" << e.offset() << " msg=" << one_line(e.what()) << '\n';
    return 1;
  } catch (const UsageError& e) {
    std::cerr << "error: kind=usage msg=" << one_line(e.what()) << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: kind=runtime msg=" << one_line(e.what()) << '\n';
    return 1;
  }
  return 0;
}
