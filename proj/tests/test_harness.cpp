#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "filldist/complex.hpp"
#include "filldist/embed.hpp"
#include "filldist/errors.hpp"
#include "filldist/harness.hpp"
#include "filldist/io.hpp"
#include "filldist/rng.hpp"

using namespace filldist;
namespace fs = std::filesystem;

namespace {

const char* kHeader =
    "seed,trial_index,n,p,face_count,min_edge_degree,lambda1,"
    "normalized_lambda1,betti1,min_fill,sum_fill_sq,infeasible_count,"
    "certificate,triangle_distortion,inequality_holds";

fs::path tmp_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "filldist_harness_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string tmp_file(const std::string& name) {
  return (tmp_dir() / name).string();
}

int cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  std::vector<const char*> argv;
  argv.push_back("filldist");
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return code;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

ExperimentConfig base_config(Mode mode) {
  ExperimentConfig cfg;
  cfg.mode = mode;
  cfg.n_values = {6};
  cfg.p_spec = {PSpec::Kind::Explicit, 0.6};
  cfg.trials = 3;
  cfg.master_seed = 11;
  return cfg;
}

}  // namespace

TEST_CASE("p specification resolves exponents per n") {
  PSpec explicit_p{PSpec::Kind::Explicit, 0.4};
  CHECK(explicit_p.resolve(10) == 0.4);
  CHECK(explicit_p.resolve(40) == 0.4);

  PSpec exponent{PSpec::Kind::Exponent, 0.3};
  CHECK(exponent.resolve(10) ==
        doctest::Approx(std::pow(10.0, -0.7)).epsilon(1e-14));
  CHECK(exponent.resolve(22) ==
        doctest::Approx(std::pow(22.0, -0.7)).epsilon(1e-14));
}

TEST_CASE("trial seeds are stable and distinct") {
  CHECK(trial_seed(5, 10, 3) == trial_seed(5, 10, 3));
  CHECK(trial_seed(5, 10, 3) != trial_seed(5, 10, 4));
  CHECK(trial_seed(5, 10, 3) != trial_seed(5, 11, 3));
  CHECK(trial_seed(5, 10, 3) != trial_seed(6, 10, 3));
  CHECK(trial_seed(5, 10, 3) ==
        derive_seed(derive_seed(5, 10), 3));
}

TEST_CASE("config validation") {
  CHECK_NOTHROW(validate_config(base_config(Mode::Sample)));

  ExperimentConfig cfg = base_config(Mode::Sample);
  cfg.n_values = {};
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.n_values = {2};
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.trials = 0;
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.p_spec.value = 1.5;
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.threads = 0;
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.ambient_dim = 1;
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);

  cfg = base_config(Mode::Sample);
  cfg.complex_path = "whatever.json";
  CHECK_THROWS_AS(validate_config(cfg), InvalidParameter);  // n conflicts
}

TEST_CASE("sample sweep fills only the sampling fields") {
  std::vector<ExperimentRecord> recs = run_sweep(base_config(Mode::Sample));
  REQUIRE(recs.size() == 3);
  for (int i = 0; i < 3; ++i) {
    const ExperimentRecord& r = recs[std::size_t(i)];
    CHECK(r.trial_index == i);
    CHECK(r.n == 6);
    CHECK(r.seed == trial_seed(11, 6, i));
    CHECK(r.p == 0.6);
    CHECK(r.face_count.has_value());
    CHECK(r.min_edge_degree.has_value());
    CHECK_FALSE(r.lambda1.has_value());
    CHECK_FALSE(r.betti1.has_value());
    CHECK_FALSE(r.min_fill.has_value());
    CHECK_FALSE(r.certificate.has_value());
    CHECK_FALSE(r.inequality_holds.has_value());
  }
}

TEST_CASE("sampling matches the seed derivation contract") {
  std::vector<ExperimentRecord> recs = run_sweep(base_config(Mode::Sample));
  SeededRng rng(derive_seed(trial_seed(11, 6, 2), 1));
  Complex2 X = sample_lm(6, 0.6, rng);
  CHECK(recs[2].face_count == X.face_count());
  CHECK(recs[2].min_edge_degree == min_edge_degree(X));
}

TEST_CASE("records come back ordered by n then trial") {
  ExperimentConfig cfg = base_config(Mode::Sample);
  cfg.n_values = {7, 5};
  cfg.trials = 2;
  std::vector<ExperimentRecord> recs = run_sweep(cfg);
  REQUIRE(recs.size() == 4);
  // n values are processed in the order given.
  CHECK(recs[0].n == 7);
  CHECK(recs[1].n == 7);
  CHECK(recs[2].n == 5);
  CHECK(recs[3].n == 5);
  CHECK(recs[0].trial_index == 0);
  CHECK(recs[1].trial_index == 1);
}

TEST_CASE("sweep is deterministic and thread count is irrelevant") {
  ExperimentConfig cfg = base_config(Mode::Sweep);
  cfg.n_values = {6, 7};
  cfg.trials = 6;
  std::vector<ExperimentRecord> serial = run_sweep(cfg);

  std::vector<ExperimentRecord> again = run_sweep(cfg);
  CHECK(serial == again);

  cfg.threads = 4;
  std::vector<ExperimentRecord> parallel = run_sweep(cfg);
  CHECK(serial == parallel);
  CHECK(records_to_csv(serial) == records_to_csv(parallel));
}

TEST_CASE("per-trial obstructions become null fields, not failures") {
  ExperimentConfig cfg = base_config(Mode::Certificate);
  cfg.n_values = {5};
  cfg.trials = 8;
  cfg.p_spec.value = 0.15;
  std::vector<ExperimentRecord> recs = run_sweep(cfg);
  REQUIRE(recs.size() == 8);
  int null_certs = 0;
  for (const ExperimentRecord& r : recs) {
    CHECK(r.face_count.has_value());
    CHECK(r.lambda1.has_value());
    if (!r.certificate.has_value()) ++null_certs;
  }
  CHECK(null_certs > 0);  // sparse samples obstruct the certificate
}

TEST_CASE("csv serialization") {
  CHECK(records_to_csv({}) == std::string(kHeader) + "\n");

  ExperimentRecord r;
  r.seed = 42;
  r.trial_index = 0;
  r.n = 6;
  r.p = 0.5;
  r.face_count = 12;
  r.min_edge_degree = 2;
  r.lambda1 = 6.0;
  r.inequality_holds = true;
  std::string csv = records_to_csv({r});
  auto lines = lines_of(csv);
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == kHeader);
  CHECK(lines[1] == "42,0,6,0.5,12,2,6,,,,,,,,true");
}

TEST_CASE("csv uses 12 significant digits for floats") {
  ExperimentRecord r;
  r.n = 5;
  r.lambda1 = 1.0 / 3.0;
  auto lines = lines_of(records_to_csv({r}));
  CHECK(lines[1].find("0.333333333333") != std::string::npos);
  CHECK(lines[1].find("0.3333333333333") == std::string::npos);
}

TEST_CASE("records survive a json round trip exactly") {
  ExperimentConfig cfg = base_config(Mode::Sweep);
  cfg.trials = 4;
  std::vector<ExperimentRecord> recs = run_sweep(cfg);
  std::vector<ExperimentRecord> back = parse_records_json(records_to_json(recs));
  CHECK(recs == back);

  CHECK_THROWS_AS(parse_records_json("{\"not\": \"an array\"}"), IoError);
  CHECK_THROWS_AS(parse_records_json("[[1,2]]"), IoError);
}

TEST_CASE("write_records writes both formats") {
  ExperimentConfig cfg = base_config(Mode::Sample);
  cfg.trials = 2;
  std::vector<ExperimentRecord> recs = run_sweep(cfg);

  std::string csv_path = tmp_file("records.csv");
  write_records(recs, csv_path, OutputFormat::Csv);
  CHECK(read_text_file(csv_path) == records_to_csv(recs));

  std::string json_path = tmp_file("records.json");
  write_records(recs, json_path, OutputFormat::Json);
  CHECK(parse_records_json(read_text_file(json_path)) == recs);

  CHECK_THROWS_AS(
      write_records(recs, "/nonexistent-dir/records.csv", OutputFormat::Csv),
      IoError);
  CHECK_THROWS_AS(read_text_file("/nonexistent-dir/records.csv"), IoError);
}

TEST_CASE("complex json round trip and validation") {
  Complex2 X(5, {Triangle{0, 1, 2}, Triangle{1, 3, 4}});
  Complex2 back = parse_complex_json(complex_to_json(X));
  CHECK(back.n() == 5);
  CHECK(back.faces() == X.faces());

  std::string path = tmp_file("complex.json");
  write_complex_json(X, path);
  Complex2 from_file = read_complex_json(path);
  CHECK(from_file.faces() == X.faces());

  CHECK_THROWS_AS(parse_complex_json("not json"), IoError);
  CHECK_THROWS_AS(parse_complex_json("[]"), IoError);
  CHECK_THROWS_AS(parse_complex_json("{\"faces\": []}"), IoError);
  CHECK_THROWS_AS(parse_complex_json("{\"n\": 2, \"faces\": []}"), IoError);
  CHECK_THROWS_AS(
      parse_complex_json("{\"n\": 5, \"faces\": [[2,1,0]]}"), IoError);
  CHECK_THROWS_AS(
      parse_complex_json("{\"n\": 5, \"faces\": [[0,1,5]]}"), IoError);
  CHECK_THROWS_AS(
      parse_complex_json("{\"n\": 5, \"faces\": [[0,1]]}"), IoError);
  CHECK_THROWS_AS(
      parse_complex_json(
          "{\"n\": 5, \"faces\": [[0,1,2],[0,1,2]]}"),
      IoError);
  CHECK_THROWS_AS(
      parse_complex_json(
          "{\"n\": 5, \"faces\": [[1,2,3],[0,1,2]]}"),
      IoError);
}

TEST_CASE("embedding json round trip") {
  Embedding emb = standard_basis_embedding(4);
  Embedding back = parse_embedding_json(embedding_to_json(emb));
  CHECK(back.n == 4);
  CHECK(back.dim == 4);
  CHECK(back.coords == emb.coords);

  std::string path = tmp_file("embedding.json");
  write_embedding_json(emb, path);
  CHECK(read_embedding_json(path).coords == emb.coords);

  CHECK_THROWS_AS(parse_embedding_json("{\"n\": 3}"), IoError);
  CHECK_THROWS_AS(
      parse_embedding_json("{\"n\": 3, \"dim\": 2, \"coords\": [[0,0]]}"),
      IoError);
}

TEST_CASE("report serializers emit rounded fields") {
  Complex2 X = new_complete(5);
  std::string fills = fill_summary_to_json(all_triangle_fills(X));
  CHECK(fills.find("\"infeasible\":0") != std::string::npos);
  CHECK(fills.find("\"sum_sq\":10") != std::string::npos);

  std::string spectra = spectral_report_to_json(spectral_report(X));
  CHECK(spectra.find("\"lambda1\":5") != std::string::npos);
  CHECK(spectra.find("\"betti1\":0") != std::string::npos);

  std::string cert = certificate_to_json(distortion_certificate(X));
  CHECK(cert.find("\"value\":0.7453559925") != std::string::npos);

  InequalityReport rep = main_inequality_report(X, standard_basis_embedding(5));
  std::string ineq = inequality_report_to_json(rep);
  CHECK(ineq.find("\"holds\":true") != std::string::npos);
}

// ---------------------------------------------------------------------
// Command-line driver

TEST_CASE("cli sample mode prints csv to stdout") {
  std::string out;
  int code = cli({"sample", "--n", "6", "--p", "1", "--trials", "2",
                  "--seed", "7"},
                 &out);
  CHECK(code == 0);
  auto lines = lines_of(out);
  REQUIRE(lines.size() == 3);
  CHECK(lines[0] == kHeader);
  CHECK(lines[1].find(",0,6,1,20,4,") != std::string::npos);
  CHECK(lines[2].find(",1,6,1,20,4,") != std::string::npos);
}

TEST_CASE("cli multiple n values and json format") {
  std::string out;
  int code = cli({"spectra", "--n", "5", "--n", "6", "--p", "1",
                  "--trials", "1", "--format", "json"},
                 &out);
  CHECK(code == 0);
  std::vector<ExperimentRecord> recs = parse_records_json(out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].n == 5);
  CHECK(recs[1].n == 6);
  CHECK(recs[0].lambda1 == doctest::Approx(5.0));
  CHECK(recs[0].betti1 == 0);
  CHECK_FALSE(recs[0].min_fill.has_value());
}

TEST_CASE("cli eps drives p per n") {
  std::string out;
  int code = cli({"sample", "--n", "10", "--eps", "0.3", "--trials", "1",
                  "--format", "json"},
                 &out);
  CHECK(code == 0);
  std::vector<ExperimentRecord> recs = parse_records_json(out);
  REQUIRE(recs.size() == 1);
  CHECK(*recs[0].p == doctest::Approx(std::pow(10.0, -0.7)).epsilon(1e-12));
}

TEST_CASE("cli writes output files") {
  std::string path = tmp_file("cli_out.csv");
  std::string out;
  int code = cli({"fill", "--n", "5", "--p", "1", "--trials", "1",
                  "--seed", "2", "--out", path},
                 &out);
  CHECK(code == 0);
  CHECK(out.empty());
  auto lines = lines_of(read_text_file(path));
  REQUIRE(lines.size() == 2);
  CHECK(lines[1].find(",10,3,") != std::string::npos);  // complete on 5
}

TEST_CASE("cli invalid configurations exit with 2") {
  std::string out, err;
  CHECK(cli({"sample", "--n", "6", "--p", "1.5"}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "6", "--eps", "1.2"}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "6", "--p", "0.5", "--eps", "0.3"}, &out,
            &err) == 2);
  CHECK(cli({"sample", "--p", "0.5"}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "2", "--p", "0.5"}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "6", "--trials", "0"}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "6", "--definitely-not-a-flag"}, &out, &err) ==
        2);
  CHECK(cli({"not-a-mode"}, &out, &err) == 2);
  CHECK(cli({}, &out, &err) == 2);
  CHECK(cli({"sample", "--n", "6", "--format", "xml"}, &out, &err) == 2);
}

TEST_CASE("cli io failures exit with 1") {
  std::string out, err;
  CHECK(cli({"spectra", "--complex", "/nonexistent/complex.json"}, &out,
            &err) == 1);

  std::string bad = tmp_file("bad_complex.json");
  write_text_file(bad, "{\"n\": 5, \"faces\": [[2,1,0]]}");
  CHECK(cli({"spectra", "--complex", bad}, &out, &err) == 1);

  CHECK(cli({"sample", "--n", "5", "--p", "1", "--out",
             "/nonexistent-dir/out.csv"},
            &out, &err) == 1);
}

TEST_CASE("cli help exits cleanly") {
  std::string out, err;
  CHECK(cli({"--help"}, &out, &err) == 0);
  CHECK(cli({"sample", "--help"}, &out, &err) == 0);
}

TEST_CASE("cli emit-complex reproduces the sampled complex") {
  std::string path = tmp_file("emitted.json");
  std::string out;
  int code = cli({"sample", "--n", "6", "--p", "0.7", "--trials", "1",
                  "--seed", "3", "--emit-complex", path},
                 &out);
  CHECK(code == 0);

  Complex2 emitted = read_complex_json(path);
  SeededRng rng(derive_seed(trial_seed(3, 6, 0), 1));
  Complex2 expected = sample_lm(6, 0.7, rng);
  CHECK(emitted.faces() == expected.faces());

  // Only meaningful for a single sampled trial.
  CHECK(cli({"sample", "--n", "6", "--p", "0.7", "--trials", "2",
             "--emit-complex", path},
            &out) == 2);
  CHECK(cli({"spectra", "--n", "6", "--p", "0.7", "--emit-complex", path},
            &out) == 2);
}

TEST_CASE("cli runs on a fixed complex without sampling") {
  std::string path = tmp_file("fixed_complex.json");
  write_complex_json(new_complete(5), path);

  std::string out;
  int code = cli({"certificate", "--complex", path, "--format", "json"}, &out);
  CHECK(code == 0);
  std::vector<ExperimentRecord> recs = parse_records_json(out);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].n == 5);
  CHECK_FALSE(recs[0].p.has_value());
  CHECK(recs[0].face_count == 10);
  CHECK(*recs[0].certificate ==
        doctest::Approx(std::sqrt(5.0 / 9.0)).epsilon(1e-9));

  // A fixed complex conflicts with explicit n values.
  std::string err;
  CHECK(cli({"certificate", "--complex", path, "--n", "5"}, &out, &err) == 2);
}

TEST_CASE("cli embed mode with a fixed embedding") {
  std::string cpath = tmp_file("embed_complex.json");
  write_complex_json(new_complete(5), cpath);
  std::string epath = tmp_file("embed_embedding.json");
  write_embedding_json(standard_basis_embedding(5), epath);

  std::string out;
  int code = cli({"embed", "--complex", cpath, "--embedding", epath,
                  "--format", "json"},
                 &out);
  CHECK(code == 0);
  std::vector<ExperimentRecord> recs = parse_records_json(out);
  REQUIRE(recs.size() == 1);
  CHECK(*recs[0].triangle_distortion == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(recs[0].inequality_holds == true);

  // Vertex-count mismatch between embedding and complex.
  std::string e6 = tmp_file("embed_embedding6.json");
  write_embedding_json(standard_basis_embedding(6), e6);
  std::string err;
  CHECK(cli({"embed", "--complex", cpath, "--embedding", e6}, &out, &err) ==
        2);
}

TEST_CASE("cli layers config file under explicit flags") {
  std::string cfg = tmp_file("config.json");
  write_text_file(cfg,
                  "{\"mode\": \"sample\", \"n\": [5], \"p\": 1.0, "
                  "\"trials\": 2, \"seed\": 9}");

  std::string out;
  int code = cli({"sample", "--config", cfg, "--format", "json"}, &out);
  CHECK(code == 0);
  std::vector<ExperimentRecord> recs = parse_records_json(out);
  REQUIRE(recs.size() == 2);
  CHECK(recs[0].n == 5);
  CHECK(recs[0].face_count == 10);

  // Explicit flags override config values.
  code = cli({"sample", "--config", cfg, "--p", "0", "--format", "json"},
             &out);
  CHECK(code == 0);
  recs = parse_records_json(out);
  CHECK(recs[0].face_count == 0);

  // The subcommand always decides the mode.
  code = cli({"spectra", "--config", cfg, "--format", "json"}, &out);
  CHECK(code == 0);
  recs = parse_records_json(out);
  CHECK(recs[0].lambda1.has_value());

  std::string bad_key = tmp_file("config_bad.json");
  write_text_file(bad_key, "{\"n\": [5], \"p\": 1.0, \"bogus\": 3}");
  std::string err;
  CHECK(cli({"sample", "--config", bad_key}, &out, &err) == 2);

  std::string both = tmp_file("config_both.json");
  write_text_file(both, "{\"n\": [5], \"p\": 0.5, \"eps\": 0.3}");
  CHECK(cli({"sample", "--config", both}, &out, &err) == 2);

  CHECK(cli({"sample", "--config", "/nonexistent/config.json"}, &out,
            &err) == 1);
}

TEST_CASE("cli threads flag preserves output byte for byte") {
  std::string out1, out4;
  CHECK(cli({"sweep", "--n", "6", "--n", "7", "--p", "0.6", "--trials", "4",
             "--seed", "13"},
            &out1) == 0);
  CHECK(cli({"sweep", "--n", "6", "--n", "7", "--p", "0.6", "--trials", "4",
             "--seed", "13", "--threads", "4"},
            &out4) == 0);
  CHECK(out1 == out4);
}
