#include <fstream>
#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "syndist/binarizer.hpp"
#include "syndist/codec.hpp"
#include "syndist/errors.hpp"
#include "syndist/learning/losses.hpp"
#include "syndist/learning/trainer.hpp"
#include "syndist/pipeline.hpp"
#include "syndist/scorer.hpp"
#include "syndist/synthetic.hpp"
#include "syndist/tuple_io.hpp"

namespace py = pybind11;
using namespace syndist;
namespace sl = syndist::learning;

namespace {

py::dict prf_dict(const Prf& p) {
  py::dict d;
  d["precision"] = p.precision;
  d["recall"] = p.recall;
  d["f1"] = p.f1;
  return d;
}

py::dict epoch_dict(const sl::EpochMetrics& m) {
  py::dict d;
  d["epoch"] = m.epoch;
  d["distance_loss"] = m.distance_loss;
  d["label_loss"] = m.label_loss;
  d["dev_labeled_f1"] = m.dev_labeled_f1;
  d["dev_unlabeled_f1"] = m.dev_unlabeled_f1;
  d["dev_word_label_accuracy"] = m.dev_word_label_accuracy;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Syntactic-distance constituency parsing: codec, losses, model and scorer";
  m.attr("__version__") = std::string(kVersion);
  m.attr("EMPTY_LABEL") = std::string(kEmptyLabel);

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<FormatError>(m, "FormatError");
  py::register_exception<EncodingError>(m, "EncodingError");
  py::register_exception<StructureError>(m, "StructureError");
  py::register_exception<UsageError>(m, "UsageError");
  py::register_exception<EvaluationError>(m, "EvaluationError");

  py::class_<NaryTree>(m, "NaryTree")
      .def_readonly("label", &NaryTree::label)
      .def_readonly("word", &NaryTree::word)
      .def_readonly("children", &NaryTree::children)
      .def("is_leaf", &NaryTree::is_leaf)
      .def("leaf_count", &NaryTree::leaf_count)
      .def("__eq__", [](const NaryTree& a, const NaryTree& b) { return a == b; })
      .def("__str__", &serialize_bracketed)
      .def("__repr__", [](const NaryTree& t) { return "NaryTree(" + serialize_bracketed(t) + ")"; });

  m.def("parse_bracketed", &parse_bracketed, py::arg("text"));
  m.def("serialize_bracketed", &serialize_bracketed, py::arg("tree"));
  m.def("preprocess", &preprocess, py::arg("tree"));

  py::class_<BinaryTree>(m, "BinaryTree")
      .def("__len__", &BinaryTree::size)
      .def("__eq__", [](const BinaryTree& a, const BinaryTree& b) { return a == b; })
      .def("__str__", &to_bracketed)
      .def_property_readonly("unary_labels", [](const BinaryTree& t) {
        std::vector<std::string> out;
        for (const auto& term : t.terminals()) out.push_back(term.unary_label);
        return out;
      });
  m.def("binarize", &binarize, py::arg("tree"));
  m.def("debinarize", &debinarize, py::arg("tree"));

  py::class_<DistanceTuple>(m, "DistanceTuple")
      .def(py::init<>())
      .def(py::init([](std::vector<double> d, std::vector<std::string> c,
                       std::vector<std::string> t, std::vector<std::string> w,
                       std::vector<std::string> u) {
             DistanceTuple tuple{std::move(d), std::move(c), std::move(t), std::move(w),
                                 std::move(u)};
             tuple.validate();
             return tuple;
           }),
           py::arg("distances"), py::arg("split_labels"), py::arg("tags"), py::arg("words"),
           py::arg("unary_labels"))
      .def_readwrite("distances", &DistanceTuple::distances)
      .def_readwrite("split_labels", &DistanceTuple::split_labels)
      .def_readwrite("tags", &DistanceTuple::tags)
      .def_readwrite("words", &DistanceTuple::words)
      .def_readwrite("unary_labels", &DistanceTuple::unary_labels)
      .def("__len__", &DistanceTuple::size)
      .def("__eq__", [](const DistanceTuple& a, const DistanceTuple& b) { return a == b; })
      .def("to_json", &to_json_line)
      .def_static("from_json", [](const std::string& s) { return from_json_line(s, 1); });

  m.def("encode", &encode, py::arg("tree"));
  m.def(
      "decode",
      [](const DistanceTuple& t, const std::string& engine) { return decode(t, parse_engine(engine)); },
      py::arg("tuple"), py::arg("engine") = "rmq");
  m.def("rank_signature", [](const std::vector<double>& d) { return rank_signature(d); },
        py::arg("distances"));
  m.def(
      "range_argmax",
      [](const std::vector<double>& d, std::size_t lo, std::size_t hi) {
        return SparseTable(d).range_argmax(lo, hi);
      },
      py::arg("distances"), py::arg("lo"), py::arg("hi"));

  m.def(
      "rank_loss",
      [](const std::vector<double>& t, const std::vector<double>& p) {
        auto l = sl::rank_loss(t, p);
        return py::make_tuple(l.value, l.gradient);
      },
      py::arg("target"), py::arg("predicted"));
  m.def(
      "mse_loss",
      [](const std::vector<double>& t, const std::vector<double>& p) {
        auto l = sl::mse_loss(t, p);
        return py::make_tuple(l.value, l.gradient);
      },
      py::arg("target"), py::arg("predicted"));
  m.def(
      "label_loss",
      [](const std::vector<int>& targets, const Eigen::MatrixXd& distributions) {
        auto l = sl::label_loss(targets, distributions);
        return py::make_tuple(l.value, l.gradient);
      },
      py::arg("targets"), py::arg("distributions"),
      "Columns of `distributions` are per-position label distributions.");

  m.def(
      "score",
      [](const std::vector<NaryTree>& gold, const std::vector<NaryTree>& pred) {
        const auto r = score(gold, pred);
        py::dict d;
        d["labeled"] = prf_dict(r.labeled);
        d["unlabeled"] = prf_dict(r.unlabeled);
        d["word_label_accuracy"] = r.word_label_accuracy;
        d["split_label_accuracy"] = r.split_label_accuracy;
        return d;
      },
      py::arg("gold"), py::arg("pred"));

  m.def("encode_trees", [](const std::vector<NaryTree>& trees) { return encode_trees(trees, nullptr); },
        py::arg("trees"), "preprocess -> binarize -> encode, dropping trees that vanish");
  m.def(
      "generate_pcfg_corpus",
      [](std::size_t sentences, std::uint64_t seed, std::size_t max_length) {
        PcfgOptions o;
        o.sentences = sentences;
        o.seed = seed;
        o.max_length = max_length;
        return generate_pcfg_corpus(o);
      },
      py::arg("sentences"), py::arg("seed") = 1, py::arg("max_length") = 20);

  py::class_<sl::Model>(m, "Model")
      .def_property_readonly("parameter_count",
                             [](const sl::Model& model) { return model.params.parameter_count(); })
      .def(
          "predict_tree",
          [](const sl::Model& model, const std::vector<std::string>& words,
             const std::vector<std::string>& tags, const std::string& engine) {
            return sl::predict_tree(model, words, tags, parse_engine(engine));
          },
          py::arg("words"), py::arg("tags"), py::arg("engine") = "rmq")
      .def("predict_tuple", &sl::predict_tuple, py::arg("words"), py::arg("tags"))
      .def("save", [](const sl::Model& model, const std::string& path) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw UsageError("cannot write '" + path + "'");
        sl::save_checkpoint(model, out);
      });

  m.def("load_model", [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open '" + path + "'");
    return sl::load_checkpoint(in);
  });

  m.def(
      "train",
      [](const std::vector<DistanceTuple>& corpus, const std::vector<DistanceTuple>& dev,
         const std::map<std::string, std::string>& config) {
        sl::TrainConfig c;
        for (const auto& [k, v] : config) c.set(k, v);
        sl::TrainResult result;
        {
          py::gil_scoped_release release;
          result = sl::train(corpus, dev, c);
        }
        py::list history;
        for (const auto& e : result.history) history.append(epoch_dict(e));
        return py::make_tuple(std::move(result.model), history, result.best_epoch);
      },
      py::arg("corpus"), py::arg("dev"), py::arg("config") = std::map<std::string, std::string>{},
      "Returns (best model, per-epoch metrics, best epoch). Config values are strings.");
}
