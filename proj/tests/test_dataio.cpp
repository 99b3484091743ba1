#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "unseen/dataio.hpp"

using namespace unseen;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("unseen-test-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  static int& counter() {
    static int c = 0;
    return c;
  }
  fs::path file(const std::string& name, const std::string& body) const {
    const fs::path p = path / name;
    std::ofstream out(p);
    out << body;
    return p;
  }
};

}  // namespace

TEST_CASE("counts csv parsing") {
  TempDir tmp;
  const auto ok = read_counts_csv(tmp.file("ok.csv", "a,2\nb,1\n"));
  CHECK(ok.n() == 3);
  CHECK(ok.counts().at("a") == 2);

  const auto with_header = read_counts_csv(tmp.file("h.csv", "species,count\na,2\nb,1\n"));
  CHECK(with_header.n() == 3);

  CHECK_THROWS_WITH_AS(read_counts_csv(tmp.file("dup.csv", "a,2\na,1\n")),
                       doctest::Contains("duplicate species"), ParseError);
  CHECK_THROWS_WITH_AS(read_counts_csv(tmp.file("zero.csv", "a,0\n")),
                       doctest::Contains(":1:"), ParseError);
  CHECK_THROWS_WITH_AS(read_counts_csv(tmp.file("neg.csv", "a,-3\n")),
                       doctest::Contains("positive"), ParseError);
  CHECK_THROWS_WITH_AS(read_counts_csv(tmp.file("text.csv", "a,2\nb,x\n")),
                       doctest::Contains(":2:"), ParseError);
  CHECK_THROWS_AS(read_counts_csv(tmp.file("empty.csv", "")), ParseError);
  CHECK_THROWS_AS(read_counts_csv(tmp.path / "missing.csv"), std::runtime_error);
}

TEST_CASE("token files") {
  TempDir tmp;
  const auto counts = read_tokens(tmp.file("t.txt", "x\ny\nx\n"));
  CHECK(counts.counts().at("x") == 2);
  CHECK(counts.counts().at("y") == 1);
  CHECK(counts.n() == 3);

  const auto blanks = read_tokens(tmp.file("b.txt", "x\n\n\ny\n\nx\n"));
  CHECK(blanks.n() == 3);

  CHECK_THROWS_AS(read_tokens(tmp.file("e.txt", "\n\n")), ParseError);
}

namespace {

ReportDocument sample_document() {
  ReportDocument doc;
  doc.kind = "unseen-risk";
  doc.config.spec = ZipfSpec{2.0};
  doc.config.n = 1000;
  doc.config.lambda = 10.0;
  doc.config.replicates = 3;
  doc.config.seed = 0xDEADBEEFCAFE1234ULL;  // exercises > 2^53 round trip
  doc.config.estimators = {"plugin", "gt"};
  doc.config.threshold_c = 10.0;
  doc.labels = {"demo"};
  RiskReport r;
  r.alpha_risk = 1.2345e-3;
  r.alpha_risk_se = 5.4e-5;
  r.unseen_risk = {{"plugin", 0.1}, {"gt", 2.3}};
  r.unseen_risk_se = {{"plugin", 0.01}, {"gt", 0.2}};
  r.mean_unseen = 319.49;
  r.mean_unseen_se = 1.25;
  r.replicates_used = 3;
  r.seed = doc.config.seed;
  r.true_alpha = 0.5;
  doc.results = {r};
  doc.rng_algorithm = "mt19937_64/splitmix64-child";
  doc.replicate_seeds = {1, 2, 3};
  doc.wall_ms = 17;
  return doc;
}

}  // namespace

TEST_CASE("report documents round trip byte for byte") {
  TempDir tmp;
  const ReportDocument doc = sample_document();
  const fs::path p = tmp.path / "report.json";
  write_report(doc, p);
  const ReportDocument back = read_report(p);
  CHECK(doc == back);
  // Serialization itself is deterministic.
  CHECK(report_to_json(doc) == report_to_json(back));

  const fs::path p2 = tmp.path / "report2.json";
  write_report(back, p2);
  std::ifstream a(p), b(p2);
  const std::string sa((std::istreambuf_iterator<char>(a)), std::istreambuf_iterator<char>());
  const std::string sb((std::istreambuf_iterator<char>(b)), std::istreambuf_iterator<char>());
  CHECK(sa == sb);
}

TEST_CASE("nan risks are refused") {
  TempDir tmp;
  ReportDocument doc = sample_document();
  doc.results[0].unseen_risk["gt"] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_WITH_AS(write_report(doc, tmp.path / "bad.json"),
                       doctest::Contains("NaN"), std::invalid_argument);
}

TEST_CASE("unwritable path is an io error") {
  const ReportDocument doc = sample_document();
  CHECK_THROWS_AS(write_report(doc, "/nonexistent-dir/report.json"), std::runtime_error);
}

TEST_CASE("split reports round trip") {
  TempDir tmp;
  SplitEvalReport rep;
  rep.lambda = 4.0;
  rep.n_used = 25;
  rep.splits_requested = 10;
  rep.splits_excluded = 1;
  rep.seed = 9;
  rep.mse = {{"plugin", 0.02}, {"gt", 0.5}};
  rep.per_split_errors = {{"plugin", {0.1, -0.2}}, {"gt", {0.9, -0.8}}};
  const fs::path p = tmp.path / "split.json";
  write_split_report(rep, p);
  const SplitEvalReport back = read_split_report(p);
  CHECK(back.lambda == rep.lambda);
  CHECK(back.n_used == rep.n_used);
  CHECK(back.splits_excluded == rep.splits_excluded);
  CHECK(back.mse == rep.mse);
  CHECK(back.per_split_errors == rep.per_split_errors);
}

TEST_CASE("experiment configs parse and validate exhaustively") {
  TempDir tmp;
  const fs::path good = tmp.file("good.json", R"({
    "schema": "v1",
    "experiment": {
      "kind": "unseen-risk",
      "distribution": {"variant": "zipf", "s": 2.0},
      "n": 1000, "lambda": 10.0, "replicates": 50, "seed": 7,
      "estimators": ["plugin", "gt"], "threshold_c": 10.0
    }
  })");
  const ConfigDocument doc = read_experiment_config(good);
  CHECK(doc.kind == "unseen-risk");
  CHECK(doc.config.n == 1000);
  CHECK(doc.config.estimators.size() == 2);
  CHECK(std::get<ZipfSpec>(doc.config.spec).s == 2.0);

  // Every problem is reported, not just the first.
  const fs::path bad = tmp.file("bad.json", R"({
    "schema": "v1",
    "experiment": {
      "kind": "mystery",
      "distribution": {"variant": "martian"},
      "lambda": -1, "replicates": 0, "n": 10,
      "estimators": ["plugin", "wat"]
    }
  })");
  try {
    read_experiment_config(bad);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("kind") != std::string::npos);
    CHECK(msg.find("martian") != std::string::npos);
    CHECK(msg.find("lambda") != std::string::npos);
    CHECK(msg.find("replicates") != std::string::npos);
    CHECK(msg.find("wat") != std::string::npos);
  }

  CHECK_THROWS_AS(read_experiment_config(tmp.file("nj.json", "{ not json")), ParseError);

  // Round trip through the writer.
  const fs::path out = tmp.path / "echo.json";
  write_experiment_config(doc, out);
  const ConfigDocument echoed = read_experiment_config(out);
  CHECK(echoed.kind == doc.kind);
  CHECK(echoed.config.seed == doc.config.seed);
}
