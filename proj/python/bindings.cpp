#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <deque>
#include <optional>

#include "rebalance/adasyn.hpp"
#include "rebalance/dataset.hpp"
#include "rebalance/error.hpp"
#include "rebalance/metrics.hpp"
#include "rebalance/model.hpp"
#include "rebalance/neighbors.hpp"
#include "rebalance/pipeline.hpp"
#include "rebalance/smote.hpp"

namespace py = pybind11;
using namespace rebalance;

namespace {

using Draws = std::optional<std::pair<std::vector<std::size_t>, std::vector<double>>>;

std::vector<Label> to_labels(const std::vector<int>& flags) {
  std::vector<Label> out(flags.size());
  for (std::size_t i = 0; i < flags.size(); ++i) out[i] = flags[i] != 0 ? Label::positive : Label::negative;
  return out;
}

py::array_t<double> matrix(const std::vector<double>& values, std::size_t rows, std::size_t cols) {
  py::array_t<double> arr({rows, cols});
  std::copy(values.begin(), values.end(), arr.mutable_data());
  return arr;
}

Dataset from_arrays(py::array_t<double, py::array::c_style | py::array::forcecast> features,
                    const std::vector<int>& labels, std::optional<std::vector<std::string>> columns,
                    const std::string& positive_label, const std::string& negative_label) {
  if (features.ndim() != 2) throw ConfigError("features must be a 2-D array");
  const auto rows = static_cast<std::size_t>(features.shape(0));
  const auto cols = static_cast<std::size_t>(features.shape(1));
  std::vector<std::string> names;
  if (columns) {
    names = *columns;
  } else {
    for (std::size_t c = 0; c < cols; ++c) names.push_back("x" + std::to_string(c + 1));
  }
  Dataset::LabelInfo info{"class", positive_label, negative_label, names.size()};
  return Dataset(std::move(names), std::vector<double>(features.data(), features.data() + rows * cols),
                 to_labels(labels), info);
}

template <class Fn>
std::vector<SyntheticSample> with_draws(const Draws& draws, std::uint64_t seed, Fn&& fn) {
  if (draws) {
    ScriptedDraws scripted(std::deque<std::size_t>(draws->first.begin(), draws->first.end()),
                           std::deque<double>(draws->second.begin(), draws->second.end()));
    return fn(scripted);
  }
  SeededDraws seeded(seed);
  return fn(seeded);
}

}  // namespace

PYBIND11_MODULE(_rebalance, m) {
  m.doc() = "SMOTE and ADASYN oversampling with evaluation helpers";

  py::register_exception<DataError>(m, "DataError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<Dataset>(m, "Dataset")
      .def_static("from_arrays", &from_arrays, py::arg("features"), py::arg("labels"),
                  py::arg("column_names") = std::nullopt, py::arg("positive_label") = "1",
                  py::arg("negative_label") = "0")
      .def_property_readonly("rows", &Dataset::rows)
      .def_property_readonly("cols", &Dataset::cols)
      .def_property_readonly("features",
                             [](const Dataset& d) { return matrix(d.values(), d.rows(), d.cols()); })
      .def_property_readonly("labels",
                             [](const Dataset& d) {
                               std::vector<int> out;
                               for (Label l : d.labels()) out.push_back(l == Label::positive ? 1 : 0);
                               return out;
                             })
      .def_property_readonly("column_names", &Dataset::column_names)
      .def_property_readonly("positive_label", &Dataset::positive_label)
      .def_property_readonly("minority_count", &Dataset::minority_count)
      .def_property_readonly("majority_count", &Dataset::majority_count)
      .def("__len__", &Dataset::rows);

  m.def("load_csv", [](const std::string& path, const std::string& label, const std::string& positive) {
    return load_csv(path, label, positive);
  }, py::arg("path"), py::arg("label_column"), py::arg("positive_label"));
  m.def("write_csv", [](const Dataset& d, const std::string& path) { write_csv(d, path); });
  m.def("partition", [](const Dataset& d) {
    auto p = partition(d);
    return py::make_tuple(p.minority, p.majority);
  });

  py::class_<SplitPair>(m, "SplitPair")
      .def_readonly("train", &SplitPair::train)
      .def_readonly("test", &SplitPair::test)
      .def_readonly("train_fraction", &SplitPair::train_fraction)
      .def_readonly("train_rows", &SplitPair::train_rows)
      .def_readonly("test_rows", &SplitPair::test_rows);
  m.def("stratified_split", &stratified_split, py::arg("ds"), py::arg("train_fraction") = 0.8,
        py::arg("seed") = 0);

  py::class_<Standardizer>(m, "Standardizer")
      .def_static("fit", &Standardizer::fit)
      .def("apply", &Standardizer::apply)
      .def("inverse", &Standardizer::inverse)
      .def_property_readonly("means", &Standardizer::means)
      .def_property_readonly("stddevs", &Standardizer::stddevs);

  m.def("knn",
        [](py::array_t<double, py::array::c_style | py::array::forcecast> points, std::vector<double> query,
           std::size_t k, std::optional<std::size_t> exclude) {
          if (points.ndim() != 2) throw ConfigError("points must be a 2-D array");
          PointView view{{points.data(), static_cast<std::size_t>(points.size())},
                         static_cast<std::size_t>(points.shape(1))};
          std::vector<std::pair<std::size_t, double>> out;
          for (const auto& n : knn(view, query, k, {.exclude = exclude}).entries) out.emplace_back(n.index, n.distance);
          return out;
        },
        py::arg("points"), py::arg("query"), py::arg("k"), py::arg("exclude") = std::nullopt);
  m.def("majority_count", &majority_count, py::arg("ds"), py::arg("row"), py::arg("k"));

  py::class_<SyntheticSample>(m, "SyntheticSample")
      .def_readonly("features", &SyntheticSample::features)
      .def_readonly("base_index", &SyntheticSample::base_index)
      .def_readonly("neighbor_index", &SyntheticSample::neighbor_index)
      .def_readonly("delta", &SyntheticSample::delta);

  m.def("smote",
        [](const Dataset& d, std::int64_t n, std::size_t k, std::uint64_t seed, std::optional<double> delta,
           const Draws& draws) {
          const SmoteConfig cfg{n, k, seed, delta};
          return with_draws(draws, seed, [&](DrawSource& src) { return smote(d, cfg, src); });
        },
        py::arg("ds"), py::arg("n"), py::arg("k") = 5, py::arg("seed") = 0, py::arg("delta") = std::nullopt,
        py::arg("draws") = std::nullopt,
        "draws=(indices, units) replays fixed random choices instead of the seeded generator");
  m.def("balance_count", &balance_count);
  m.def("append_synthetic",
        [](const Dataset& d, const std::vector<SyntheticSample>& s) { return append_synthetic(d, s); });

  py::class_<AdasynEntry>(m, "AdasynEntry")
      .def_readonly("row", &AdasynEntry::row)
      .def_readonly("majority_neighbors", &AdasynEntry::majority_neighbors)
      .def_readonly("ratio", &AdasynEntry::ratio)
      .def_readonly("weight", &AdasynEntry::weight)
      .def_readonly("count", &AdasynEntry::count);
  py::class_<AdasynPlan>(m, "AdasynPlan")
      .def_readonly("beta", &AdasynPlan::beta)
      .def_readonly("k", &AdasynPlan::k)
      .def_readonly("total", &AdasynPlan::total)
      .def_readonly("uniform_fallback", &AdasynPlan::uniform_fallback)
      .def_readonly("entries", &AdasynPlan::entries);
  m.def("adasyn_plan", &adasyn_plan, py::arg("ds"), py::arg("beta"), py::arg("k"));
  m.def("adasyn",
        [](const Dataset& d, double beta, std::size_t k, std::uint64_t seed, std::optional<double> delta,
           const Draws& draws) {
          const AdasynConfig cfg{beta, k, seed, delta};
          return with_draws(draws, seed, [&](DrawSource& src) { return adasyn(d, cfg, src); });
        },
        py::arg("ds"), py::arg("beta") = 1.0, py::arg("k") = 5, py::arg("seed") = 0,
        py::arg("delta") = std::nullopt, py::arg("draws") = std::nullopt);

  py::class_<ConfusionMatrix>(m, "ConfusionMatrix")
      .def(py::init([](std::uint64_t tp, std::uint64_t fp, std::uint64_t tn, std::uint64_t fn) {
             return ConfusionMatrix{tp, fp, tn, fn};
           }),
           py::arg("tp"), py::arg("fp"), py::arg("tn"), py::arg("fn"))
      .def_readonly("tp", &ConfusionMatrix::tp)
      .def_readonly("fp", &ConfusionMatrix::fp)
      .def_readonly("tn", &ConfusionMatrix::tn)
      .def_readonly("fn", &ConfusionMatrix::fn);
  m.def("confusion", [](const std::vector<int>& truth, const std::vector<int>& predicted) {
    return confusion(to_labels(truth), to_labels(predicted));
  });
  m.def("accuracy", [](const ConfusionMatrix& c) { return accuracy(c).value; });
  m.def("precision", [](const ConfusionMatrix& c) { return precision(c).value; });
  m.def("recall", [](const ConfusionMatrix& c) { return recall(c).value; });
  m.def("f1", [](const ConfusionMatrix& c) { return f1(c).value; });
  m.def("auc_single_point", [](const ConfusionMatrix& c) { return auc_single_point(c).value; });

  py::class_<RocCurve>(m, "RocCurve")
      .def_readonly("auc", &RocCurve::auc)
      .def_property_readonly("points", [](const RocCurve& r) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : r.points) out.emplace_back(p.fpr, p.tpr);
        return out;
      });
  m.def("roc", [](const std::vector<int>& truth, const std::vector<double>& scores) {
    return roc(to_labels(truth), scores);
  });

  py::class_<LogisticModel>(m, "LogisticModel")
      .def_readonly("weights", &LogisticModel::weights)
      .def_readonly("bias", &LogisticModel::bias)
      .def_readonly("loss_history", &LogisticModel::loss_history);
  m.def("train_logistic",
        [](const Dataset& d, double lr, std::size_t epochs) { return train_logistic(d, {lr, epochs, 0}); },
        py::arg("ds"), py::arg("learning_rate") = 0.1, py::arg("epochs") = 1000);
  m.def("predict_scores", &predict_scores);
  m.def("predict_labels", [](const LogisticModel& model, const Dataset& d, double threshold) {
    std::vector<int> out;
    for (Label l : predict_labels(model, d, threshold)) out.push_back(l == Label::positive ? 1 : 0);
    return out;
  }, py::arg("model"), py::arg("ds"), py::arg("threshold") = 0.5);

  m.def("evaluate_json",
        [](const Dataset& d, const std::string& method, double train_fraction, std::uint64_t seed, std::size_t k,
           std::optional<std::int64_t> n, double beta, std::optional<double> delta, double lr, std::size_t epochs,
           double threshold) {
          EvaluateOptions o;
          o.resampling = {parse_method(method), k, seed, n, beta, delta};
          o.train_fraction = train_fraction;
          o.training = {lr, epochs, seed};
          o.threshold = threshold;
          return to_json(evaluate(d, o)).dump();
        },
        py::arg("ds"), py::arg("method") = "none", py::arg("train_fraction") = 0.8, py::arg("seed") = 0,
        py::arg("k") = 5, py::arg("n") = std::nullopt, py::arg("beta") = 1.0, py::arg("delta") = std::nullopt,
        py::arg("learning_rate") = 0.1, py::arg("epochs") = 1000, py::arg("threshold") = 0.5);
}
