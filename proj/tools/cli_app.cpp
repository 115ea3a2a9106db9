#include "cli_app.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <ostream>
#include <vector>

#include "CLI11.hpp"
#include "rebalance/dataset.hpp"
#include "rebalance/error.hpp"
#include "rebalance/pipeline.hpp"

namespace rebalance::cli {
namespace {

struct CommonFlags {
  std::string input;
  std::string method;
  std::size_t k = 5;
  std::optional<std::uint64_t> seed;
  std::string label_col = "class";
  std::string positive_label;
  std::optional<std::int64_t> n;
  std::optional<double> beta;
  std::optional<double> delta;
};

void add_common(CLI::App& cmd, CommonFlags& f) {
  cmd.add_option("--k", f.k, "Nearest neighbours used for interpolation")->capture_default_str();
  cmd.add_option("--seed", f.seed, "Random seed (fallback: RESAMPLE_SEED, then 0)");
  cmd.add_option("--label-col", f.label_col, "Name of the label column")->capture_default_str();
  cmd.add_option("--positive-label", f.positive_label, "Label value of the minority class")->required();
  auto* n = cmd.add_option("--n", f.n, "SMOTE: number of synthetic rows (default: balance the classes)");
  auto* beta = cmd.add_option("--beta", f.beta, "ADASYN: balance level in (0, 1] (default 1)");
  n->excludes(beta);
  cmd.add_option("--delta", f.delta, "Fix the interpolation coefficient instead of drawing it");
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return *flag;
  if (const char* env = std::getenv("RESAMPLE_SEED"); env && *env) {
    std::uint64_t v = 0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto [ptr, ec] = std::from_chars(env, end, v);
    if (ec != std::errc() || ptr != end) throw ConfigError("RESAMPLE_SEED is not an unsigned integer");
    return v;
  }
  return 0;
}

ResampleOptions to_options(const CommonFlags& f, Method method) {
  ResampleOptions o;
  o.method = method;
  o.k = f.k;
  o.seed = resolve_seed(f.seed);
  o.n = f.n;
  o.beta = f.beta.value_or(1.0);
  o.delta = f.delta;
  if (method == Method::adasyn && f.n) throw ConfigError("--n applies to smote only");
  if (method == Method::smote && f.beta) throw ConfigError("--beta applies to adasyn only");
  return o;
}

class ScopedWarnings {
 public:
  explicit ScopedWarnings(std::ostream& err)
      : previous_(set_warning_handler([&err](std::string_view msg) { err << "warning: " << msg << '\n'; })) {}
  ~ScopedWarnings() { set_warning_handler(std::move(previous_)); }
  ScopedWarnings(const ScopedWarnings&) = delete;
  ScopedWarnings& operator=(const ScopedWarnings&) = delete;

 private:
  WarningHandler previous_;
};

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rebalance two-class datasets with SMOTE or ADASYN and measure the effect"};
  app.require_subcommand(1);

  CommonFlags rs;
  std::string output;
  auto* resample_cmd = app.add_subcommand("resample", "Append synthetic minority rows to a CSV file");
  resample_cmd->add_option("input", rs.input, "Input CSV")->required();
  resample_cmd->add_option("output", output, "Output CSV")->required();
  resample_cmd->add_option("--method", rs.method, "smote or adasyn")
      ->required()
      ->check(CLI::IsMember({"smote", "adasyn"}));
  add_common(*resample_cmd, rs);

  CommonFlags ev;
  double train_frac = 0.8;
  TrainingConfig training;
  double threshold = 0.5;
  std::string roc_out;
  std::string model_out;
  auto* evaluate_cmd = app.add_subcommand("evaluate", "Split, resample the train part, fit and score a model");
  evaluate_cmd->add_option("input", ev.input, "Input CSV")->required();
  evaluate_cmd->add_option("--method", ev.method, "none, smote or adasyn")
      ->required()
      ->check(CLI::IsMember({"none", "smote", "adasyn"}));
  evaluate_cmd->add_option("--train-frac", train_frac, "Fraction of each class used for training")
      ->capture_default_str();
  add_common(*evaluate_cmd, ev);
  evaluate_cmd->add_option("--lr", training.learning_rate, "Gradient descent step size")->capture_default_str();
  evaluate_cmd->add_option("--epochs", training.epochs, "Gradient descent epochs")->capture_default_str();
  evaluate_cmd->add_option("--threshold", threshold, "Score threshold for the positive label")
      ->capture_default_str();
  evaluate_cmd->add_option("--roc-out", roc_out, "Write the test ROC curve as fpr,tpr CSV");
  evaluate_cmd->add_option("--model-out", model_out, "Write the fitted model");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  ScopedWarnings warnings(err);
  try {
    if (*resample_cmd) {
      const Dataset ds = load_csv(rs.input, rs.label_col, rs.positive_label);
      const auto result = resample(ds, to_options(rs, parse_method(rs.method)));
      write_csv(result.data, output);
    } else {
      const Dataset ds = load_csv(ev.input, ev.label_col, ev.positive_label);
      EvaluateOptions opts;
      opts.resampling = to_options(ev, parse_method(ev.method));
      opts.train_fraction = train_frac;
      training.seed = opts.resampling.seed;
      opts.training = training;
      opts.threshold = threshold;
      const RunReport report = evaluate(ds, opts);
      if (!roc_out.empty()) write_roc_csv(report.roc, roc_out);
      if (!model_out.empty()) {
        std::ofstream mf(model_out);
        if (!mf) throw DataError("cannot write '" + model_out + "'");
        save_model(report.model, mf);
      }
      out << to_json(report).dump(2) << '\n';
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DataError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}

}  // namespace rebalance::cli
