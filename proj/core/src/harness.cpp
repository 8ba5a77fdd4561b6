#include "filldist/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>
#include <type_traits>

#include <json.hpp>

#include "filldist/chains.hpp"
#include "filldist/complex.hpp"
#include "filldist/embed.hpp"
#include "filldist/errors.hpp"
#include "filldist/io.hpp"
#include "filldist/rng.hpp"
#include "filldist/spectra.hpp"

namespace filldist {

using nlohmann::json;

double PSpec::resolve(int n) const {
  double p = kind == Kind::Explicit
                 ? value
                 : std::pow(static_cast<double>(n), value - 1.0);
  if (p < 0.0) p = 0.0;
  if (p > 1.0) p = 1.0;
  return p;
}

std::uint64_t trial_seed(std::uint64_t master_seed, int n, int trial_index) {
  return derive_seed(derive_seed(master_seed, static_cast<std::uint64_t>(n)),
                     static_cast<std::uint64_t>(trial_index));
}

void validate_config(const ExperimentConfig& config) {
  if (config.trials < 1) throw InvalidParameter("trials must be >= 1");
  if (config.threads < 1) throw InvalidParameter("threads must be >= 1");
  if (config.complex_path) {
    if (!config.n_values.empty()) {
      throw InvalidParameter("n values conflict with a loaded complex");
    }
  } else {
    if (config.n_values.empty()) {
      throw InvalidParameter("at least one n value is required");
    }
    for (int n : config.n_values) {
      if (n < 3) throw InvalidParameter("n must be >= 3");
    }
  }
  if (config.p_spec.kind == PSpec::Kind::Explicit) {
    if (!(config.p_spec.value >= 0.0 && config.p_spec.value <= 1.0)) {
      throw InvalidParameter("p must lie in [0, 1]");
    }
  } else {
    if (!(config.p_spec.value < 1.0)) {
      throw InvalidParameter("eps must be < 1");
    }
  }
  if (config.ambient_dim != 0 && config.ambient_dim < 2) {
    throw InvalidParameter("dim must be >= 2");
  }
}

namespace {

struct TrialPlan {
  bool spectra = false;   // normalized_lambda1, betti1
  bool lambda = false;    // lambda1
  bool fill = false;
  bool embed = false;     // distortion + inequality
  bool certificate = false;
};

TrialPlan plan_for(Mode mode) {
  TrialPlan plan;
  switch (mode) {
    case Mode::Sample:
      break;
    case Mode::Spectra:
      plan.spectra = plan.lambda = true;
      break;
    case Mode::Fill:
      plan.fill = true;
      break;
    case Mode::Embed:
      plan.lambda = plan.fill = plan.embed = true;
      break;
    case Mode::Certificate:
      plan.spectra = plan.lambda = plan.fill = plan.certificate = true;
      break;
    case Mode::Sweep:
      plan.spectra = plan.lambda = plan.fill = plan.embed =
          plan.certificate = true;
      break;
  }
  return plan;
}

ExperimentRecord run_trial(const ExperimentConfig& config,
                           const std::optional<Complex2>& fixed_complex,
                           const std::optional<Embedding>& fixed_embedding,
                           int n, int trial) {
  ExperimentRecord rec;
  rec.trial_index = trial;
  rec.n = n;
  rec.seed = trial_seed(config.master_seed, n, trial);

  std::optional<Complex2> sampled;
  if (!fixed_complex) {
    double p = config.p_spec.resolve(n);
    rec.p = p;
    SeededRng rng(derive_seed(rec.seed, 1));
    sampled = sample_lm(n, p, rng);
  }
  const Complex2& X = fixed_complex ? *fixed_complex : *sampled;

  rec.face_count = X.face_count();
  rec.min_edge_degree = min_edge_degree(X);

  TrialPlan plan = plan_for(config.mode);

  if (plan.lambda) rec.lambda1 = lambda_k(X, 1);
  if (plan.spectra) {
    rec.betti1 = betti1_real(X);
    try {
      rec.normalized_lambda1 = normalized_lambda1(X);
    } catch (const DegenerateDegree&) {
      // edge outside every face: normalization undefined, field stays null
    }
  }

  std::optional<FillSummary> fills;
  if (plan.fill) {
    fills = all_triangle_fills(X);
    rec.min_fill = fills->min;
    rec.sum_fill_sq = fills->sum_sq;
    rec.infeasible_count = fills->infeasible;
  }

  if (plan.certificate && fills && fills->infeasible == 0 && rec.lambda1 &&
      *rec.lambda1 > 0.0 && X.face_count() > 0) {
    rec.certificate =
        certificate_value(n, *rec.lambda1, X.face_count(), *fills->sum_sq);
  }

  if (plan.embed && fills && fills->infeasible == 0) {
    Embedding emb;
    if (fixed_embedding) {
      emb = *fixed_embedding;
    } else {
      int dim = config.ambient_dim > 0 ? config.ambient_dim : n;
      SeededRng rng(derive_seed(rec.seed, 2));
      emb = random_gaussian_embedding(n, dim, rng);
    }
    try {
      rec.triangle_distortion = triangle_distortion(emb, *fills);
      rec.inequality_holds =
          main_inequality_report(X, emb, *fills, *rec.lambda1).holds;
    } catch (const DegenerateEmbedding&) {
      // zero-area image: distortion undefined, fields stay null
    }
  }

  return rec;
}

}  // namespace

std::vector<ExperimentRecord> run_sweep(const ExperimentConfig& config) {
  validate_config(config);

  std::optional<Complex2> fixed_complex;
  if (config.complex_path) {
    fixed_complex = read_complex_json(*config.complex_path);
  }
  std::optional<Embedding> fixed_embedding;
  if (config.embedding_path) {
    fixed_embedding = read_embedding_json(*config.embedding_path);
  }

  std::vector<int> ns = config.n_values;
  if (fixed_complex) ns = {fixed_complex->n()};
  if (fixed_embedding) {
    for (int n : ns) {
      if (fixed_embedding->n != n) {
        throw InvalidParameter(
            "embedding vertex count does not match the run's n");
      }
    }
  }

  std::size_t task_count = ns.size() * static_cast<std::size_t>(config.trials);
  std::vector<ExperimentRecord> records(task_count);

  std::atomic<std::size_t> next{0};
  std::mutex failure_mutex;
  std::exception_ptr failure;

  auto worker = [&]() {
    for (;;) {
      std::size_t slot = next.fetch_add(1);
      if (slot >= task_count) return;
      {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (failure) return;
      }
      int n = ns[slot / static_cast<std::size_t>(config.trials)];
      int trial = static_cast<int>(slot % static_cast<std::size_t>(config.trials));
      try {
        records[slot] =
            run_trial(config, fixed_complex, fixed_embedding, n, trial);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };

  int thread_count = std::min<int>(config.threads,
                                   static_cast<int>(task_count));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(thread_count));
    for (int i = 0; i < thread_count; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  return records;
}

namespace {

template <typename T>
void append_cell(std::string& out, const std::optional<T>& value) {
  out.push_back(',');
  if (!value) return;
  if constexpr (std::is_same_v<T, bool>) {
    out += *value ? "true" : "false";
  } else if constexpr (std::is_same_v<T, double>) {
    out += format12(*value);
  } else {
    out += std::to_string(*value);
  }
}

constexpr const char* kCsvHeader =
    "seed,trial_index,n,p,face_count,min_edge_degree,lambda1,"
    "normalized_lambda1,betti1,min_fill,sum_fill_sq,infeasible_count,"
    "certificate,triangle_distortion,inequality_holds";

}  // namespace

std::string records_to_csv(const std::vector<ExperimentRecord>& records) {
  std::string out = kCsvHeader;
  out.push_back('\n');
  for (const ExperimentRecord& r : records) {
    out += std::to_string(r.seed);
    out.push_back(',');
    out += std::to_string(r.trial_index);
    out.push_back(',');
    out += std::to_string(r.n);
    append_cell(out, r.p);
    append_cell(out, r.face_count);
    append_cell(out, r.min_edge_degree);
    append_cell(out, r.lambda1);
    append_cell(out, r.normalized_lambda1);
    append_cell(out, r.betti1);
    append_cell(out, r.min_fill);
    append_cell(out, r.sum_fill_sq);
    append_cell(out, r.infeasible_count);
    append_cell(out, r.certificate);
    append_cell(out, r.triangle_distortion);
    append_cell(out, r.inequality_holds);
    out.push_back('\n');
  }
  return out;
}

namespace {

template <typename T>
json to_json_value(const std::optional<T>& value) {
  if (!value) return nullptr;
  return *value;
}

template <typename T>
std::optional<T> from_json_value(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return j.at(key).get<T>();
}

}  // namespace

std::string records_to_json(const std::vector<ExperimentRecord>& records) {
  json arr = json::array();
  for (const ExperimentRecord& r : records) {
    json obj;
    obj["seed"] = r.seed;
    obj["trial_index"] = r.trial_index;
    obj["n"] = r.n;
    obj["p"] = to_json_value(r.p);
    obj["face_count"] = to_json_value(r.face_count);
    obj["min_edge_degree"] = to_json_value(r.min_edge_degree);
    obj["lambda1"] = to_json_value(r.lambda1);
    obj["normalized_lambda1"] = to_json_value(r.normalized_lambda1);
    obj["betti1"] = to_json_value(r.betti1);
    obj["min_fill"] = to_json_value(r.min_fill);
    obj["sum_fill_sq"] = to_json_value(r.sum_fill_sq);
    obj["infeasible_count"] = to_json_value(r.infeasible_count);
    obj["certificate"] = to_json_value(r.certificate);
    obj["triangle_distortion"] = to_json_value(r.triangle_distortion);
    obj["inequality_holds"] = to_json_value(r.inequality_holds);
    arr.push_back(std::move(obj));
  }
  return arr.dump();
}

std::vector<ExperimentRecord> parse_records_json(const std::string& text) {
  json arr = json::parse(text, nullptr, false);
  if (arr.is_discarded() || !arr.is_array()) {
    throw IoError("records JSON must be an array of objects");
  }
  std::vector<ExperimentRecord> records;
  records.reserve(arr.size());
  for (const json& obj : arr) {
    if (!obj.is_object()) throw IoError("records JSON: non-object entry");
    ExperimentRecord r;
    r.seed = obj.at("seed").get<std::uint64_t>();
    r.trial_index = obj.at("trial_index").get<int>();
    r.n = obj.at("n").get<int>();
    r.p = from_json_value<double>(obj, "p");
    r.face_count = from_json_value<index_t>(obj, "face_count");
    r.min_edge_degree = from_json_value<index_t>(obj, "min_edge_degree");
    r.lambda1 = from_json_value<double>(obj, "lambda1");
    r.normalized_lambda1 = from_json_value<double>(obj, "normalized_lambda1");
    r.betti1 = from_json_value<index_t>(obj, "betti1");
    r.min_fill = from_json_value<index_t>(obj, "min_fill");
    r.sum_fill_sq = from_json_value<double>(obj, "sum_fill_sq");
    r.infeasible_count = from_json_value<index_t>(obj, "infeasible_count");
    r.certificate = from_json_value<double>(obj, "certificate");
    r.triangle_distortion = from_json_value<double>(obj, "triangle_distortion");
    r.inequality_holds = from_json_value<bool>(obj, "inequality_holds");
    records.push_back(std::move(r));
  }
  return records;
}

void write_records(const std::vector<ExperimentRecord>& records,
                   const std::string& path, OutputFormat format) {
  std::string payload = format == OutputFormat::Csv
                            ? records_to_csv(records)
                            : records_to_json(records);
  if (format == OutputFormat::Json) payload.push_back('\n');
  write_text_file(path, payload);
}

}  // namespace filldist
