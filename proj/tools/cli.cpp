#include "cli.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "filldist/errors.hpp"
#include "filldist/harness.hpp"
#include "filldist/io.hpp"
#include "filldist/rng.hpp"

namespace filldist {

namespace {

const std::map<std::string, Mode> kModes = {
    {"sample", Mode::Sample},       {"spectra", Mode::Spectra},
    {"fill", Mode::Fill},           {"embed", Mode::Embed},
    {"certificate", Mode::Certificate}, {"sweep", Mode::Sweep},
};

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  throw InvalidParameter("format must be csv or json");
}

// Raw flag values as parsed; merged into ExperimentConfig afterwards so a
// config file and command line flags can layer cleanly.
struct RawOptions {
  std::vector<int> n_values;
  double p = 0.0;
  double eps = 0.0;
  int trials = 0;
  std::uint64_t seed = 0;
  int dim = 0;
  std::string out_path;
  std::string format;
  std::string complex_path;
  std::string embedding_path;
  std::string config_path;
  std::string emit_complex;
  int threads = 0;
};

void add_common_options(CLI::App* sub, RawOptions& raw) {
  sub->add_option("--n", raw.n_values,
                  "vertex counts (repeatable or space separated)");
  sub->add_option("--p", raw.p, "face probability in [0,1]");
  sub->add_option("--eps", raw.eps,
                  "probability exponent: p = n^(eps-1), eps < 1");
  sub->add_option("--trials", raw.trials, "trials per n (default 1)");
  sub->add_option("--seed", raw.seed, "64-bit master seed (default 0)");
  sub->add_option("--dim", raw.dim,
                  "ambient dimension for embeddings (default: n)");
  sub->add_option("--out", raw.out_path, "output file (default: stdout)");
  sub->add_option("--format", raw.format, "output format: csv or json");
  sub->add_option("--complex", raw.complex_path,
                  "load a complex JSON instead of sampling");
  sub->add_option("--embedding", raw.embedding_path,
                  "load a fixed embedding JSON");
  sub->add_option("--config", raw.config_path, "experiment config JSON");
  sub->add_option("--threads", raw.threads, "worker threads (default 1)");
  sub->add_option("--emit-complex", raw.emit_complex,
                  "also write the sampled complex JSON here "
                  "(sample mode, one n, one trial)");
}

void apply_config_file(const std::string& path, ExperimentConfig& config,
                       bool& mode_from_config) {
  nlohmann::json j = nlohmann::json::parse(read_text_file(path), nullptr,
                                           false);
  if (j.is_discarded() || !j.is_object()) {
    throw IoError("config file is not a JSON object: " + path);
  }
  bool saw_p = false;
  bool saw_eps = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "mode") {
      auto it = kModes.find(value.get<std::string>());
      if (it == kModes.end()) throw InvalidParameter("unknown mode in config");
      config.mode = it->second;
      mode_from_config = true;
    } else if (key == "n") {
      config.n_values = value.get<std::vector<int>>();
    } else if (key == "p") {
      config.p_spec = {PSpec::Kind::Explicit, value.get<double>()};
      saw_p = true;
    } else if (key == "eps") {
      config.p_spec = {PSpec::Kind::Exponent, value.get<double>()};
      saw_eps = true;
    } else if (key == "trials") {
      config.trials = value.get<int>();
    } else if (key == "seed") {
      config.master_seed = value.get<std::uint64_t>();
    } else if (key == "dim") {
      config.ambient_dim = value.get<int>();
    } else if (key == "out") {
      config.output_path = value.get<std::string>();
    } else if (key == "format") {
      config.format = parse_format(value.get<std::string>());
    } else if (key == "threads") {
      config.threads = value.get<int>();
    } else if (key == "complex") {
      config.complex_path = value.get<std::string>();
    } else if (key == "embedding") {
      config.embedding_path = value.get<std::string>();
    } else {
      throw InvalidParameter("unknown config key: " + key);
    }
  }
  if (saw_p && saw_eps) {
    throw InvalidParameter("config sets both p and eps");
  }
}

int run_parsed(const CLI::App& sub, Mode mode, const RawOptions& raw,
               std::ostream& out) {
  ExperimentConfig config;
  config.mode = mode;

  bool mode_from_config = false;
  if (sub.count("--config") > 0) {
    apply_config_file(raw.config_path, config, mode_from_config);
    config.mode = mode;  // the subcommand always wins
  }

  if (sub.count("--n") > 0) config.n_values = raw.n_values;
  bool cli_p = sub.count("--p") > 0;
  bool cli_eps = sub.count("--eps") > 0;
  if (cli_p && cli_eps) {
    throw InvalidParameter("--p and --eps are mutually exclusive");
  }
  if (cli_p) config.p_spec = {PSpec::Kind::Explicit, raw.p};
  if (cli_eps) config.p_spec = {PSpec::Kind::Exponent, raw.eps};
  if (sub.count("--trials") > 0) config.trials = raw.trials;
  if (sub.count("--seed") > 0) config.master_seed = raw.seed;
  if (sub.count("--dim") > 0) config.ambient_dim = raw.dim;
  if (sub.count("--out") > 0) config.output_path = raw.out_path;
  if (sub.count("--format") > 0) config.format = parse_format(raw.format);
  if (sub.count("--threads") > 0) config.threads = raw.threads;
  if (sub.count("--complex") > 0) config.complex_path = raw.complex_path;
  if (sub.count("--embedding") > 0) {
    config.embedding_path = raw.embedding_path;
  }

  bool emit = sub.count("--emit-complex") > 0;
  if (emit) {
    if (config.mode != Mode::Sample || config.complex_path ||
        config.n_values.size() != 1 || config.trials != 1) {
      throw InvalidParameter(
          "--emit-complex requires sample mode, one n, one trial");
    }
  }

  validate_config(config);
  std::vector<ExperimentRecord> records = run_sweep(config);

  if (emit) {
    int n = config.n_values.front();
    SeededRng rng(derive_seed(trial_seed(config.master_seed, n, 0), 1));
    Complex2 X = sample_lm(n, config.p_spec.resolve(n), rng);
    write_complex_json(X, raw.emit_complex);
  }

  if (config.output_path.empty()) {
    std::string payload = config.format == OutputFormat::Csv
                              ? records_to_csv(records)
                              : records_to_json(records) + "\n";
    out << payload;
  } else {
    write_records(records, config.output_path, config.format);
  }
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"filling-distortion experiments on random 2-complexes"};
  app.require_subcommand(1);

  RawOptions raw;
  std::map<const CLI::App*, Mode> mode_of;
  for (const auto& [name, mode] : kModes) {
    CLI::App* sub = app.add_subcommand(name, name + std::string(" mode"));
    add_common_options(sub, raw);
    mode_of[sub] = mode;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    const CLI::App* sub = app.get_subcommands().front();
    return run_parsed(*sub, mode_of.at(sub), raw, out);
  } catch (const InvalidParameter& e) {
    err << "invalid configuration: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace filldist
