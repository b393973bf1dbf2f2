#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <string>

#include "pcervm/basis.hpp"
#include "pcervm/cs.hpp"
#include "pcervm/dataset.hpp"
#include "pcervm/json_io.hpp"
#include "pcervm/metrics.hpp"
#include "pcervm/ohagan.hpp"
#include "pcervm/rvm.hpp"

using namespace pcervm;

namespace {

// Temp file that removes itself.
struct TempFile {
  std::string path;
  explicit TempFile(const std::string& name) : path("io_test_" + name) {}
  ~TempFile() { std::remove(path.c_str()); }
};

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("basis spec JSON round trip") {
  for (auto rule : {Truncation::TD, Truncation::LQ, Truncation::HC}) {
    const auto spec = build_index_set(3, 3, rule, 0.6);
    const auto back = spec_from_json(to_json(spec));
    CHECK(back.K == spec.K);
    CHECK(back.P == spec.P);
    CHECK(back.rule == spec.rule);
    CHECK(back.indices == spec.indices);
    if (rule == Truncation::LQ) CHECK(back.q == spec.q);
  }

  auto j = to_json(build_index_set(2, 1, Truncation::TD));
  j["indices"][0] = {0, 0, 0};  // wrong length vs K
  CHECK_THROWS(spec_from_json(j));
}

TEST_CASE("RVM model JSON round trip preserves every coefficient bit") {
  const auto inst = make_instance(3, 5);
  const auto ds = sample_dataset(inst, 60, 6);
  const auto spec = build_index_set(3, 2, Truncation::TD);
  rvm::PriorConfig prior;
  prior.c = 1.0;
  rvm::FitConfig config;
  config.max_sweeps = 200;
  const auto fit = rvm::fit(ds, spec, prior, config);

  const auto j = to_json(fit, prior, config);
  const SparsePce back = model_from_json(j);
  CHECK(back.source == "rvm");
  CHECK(back.coeff_mean == fit.pce.coeff_mean);
  CHECK(back.coeff_var == fit.pce.coeff_var);
  CHECK(back.success_prob == fit.pce.success_prob);
  CHECK(back.spec.indices == spec.indices);

  // File round trip, then predict: identical to the in-memory model.
  TempFile f("model.json");
  write_json_file(j, f.path);
  const SparsePce loaded = model_from_json(read_json_file(f.path));
  Eigen::MatrixXd Xi = ds.Xi.topRows(10);
  CHECK(predict(loaded, Xi) == predict(fit.pce, Xi));

  // Truncated coefficient vector is rejected.
  auto bad = j;
  bad["coeff_mean"].erase(0);
  CHECK_THROWS(model_from_json(bad));
}

TEST_CASE("CS model JSON round trip") {
  const auto inst = make_instance(2, 8);
  const auto ds = sample_dataset(inst, 5, 9);  // underdetermined: 5 < 6 terms
  const auto spec = build_index_set(2, 2, Truncation::TD);
  const auto fit = cs::fit_cs(ds, spec, cs::CsConfig{});
  const auto j = to_json(fit, cs::CsConfig{});
  const SparsePce back = model_from_json(j);
  CHECK(back.source == "cs");
  CHECK(back.coeff_mean == fit.pce.coeff_mean);
  CHECK(back.success_prob == fit.pce.success_prob);
}

TEST_CASE("benchmark instance JSON round trip") {
  const auto inst = make_instance(4, 77);
  const auto back = instance_from_json(to_json(inst));
  CHECK(back.seed == inst.seed);
  CHECK(back.a1 == inst.a1);
  CHECK(back.a2 == inst.a2);
  CHECK(back.a3 == inst.a3);
  CHECK(back.M == inst.M);
}

TEST_CASE("dataset CSV round trip is bit-exact") {
  const auto inst = make_instance(3, 1);
  const auto ds = sample_dataset(inst, 25, 2, 0.1);
  TempFile f("ds.csv");
  save_dataset_csv(ds, f.path);
  const Dataset back = load_dataset_csv(f.path);
  CHECK(back.Xi == ds.Xi);
  CHECK(back.y == ds.y);
}

TEST_CASE("dataset CSV header auto-detection") {
  TempFile with("header.csv"), without("plain.csv");
  write_text(with.path, "xi_1,xi_2,y\n0.5,-1.0,2.0\n1.5,0.25,-3.0\n");
  write_text(without.path, "0.5,-1.0,2.0\n1.5,0.25,-3.0\n");
  const Dataset a = load_dataset_csv(with.path);
  const Dataset b = load_dataset_csv(without.path);
  CHECK(a.Xi == b.Xi);
  CHECK(a.y == b.y);
  CHECK(a.n() == 2);
  CHECK(a.k() == 2);
  CHECK(a.Xi(1, 1) == 0.25);
  CHECK(a.y(1) == -3.0);
}

TEST_CASE("load_matrix_csv reads inputs without an output column") {
  TempFile f("mat.csv");
  write_text(f.path, "a,b\n1,2\n3,4\n5,6\n");
  const Eigen::MatrixXd m = load_matrix_csv(f.path);
  REQUIRE(m.rows() == 3);
  REQUIRE(m.cols() == 2);
  CHECK(m(2, 1) == 6.0);
}

TEST_CASE("dataset errors: missing file, ragged rows, non-finite values") {
  CHECK_THROWS(load_dataset_csv("does_not_exist_anywhere.csv"));

  TempFile ragged("ragged.csv");
  write_text(ragged.path, "1,2,3\n4,5\n");
  CHECK_THROWS(load_dataset_csv(ragged.path));

  TempFile nonnum("nonnum.csv");
  write_text(nonnum.path, "1,2,3\n4,x,6\n");
  CHECK_THROWS(load_dataset_csv(nonnum.path));

  TempFile nan("nan.csv");
  write_text(nan.path, "1,2,nan\n");
  CHECK_THROWS(load_dataset_csv(nan.path));

  TempFile onecol("onecol.csv");
  write_text(onecol.path, "1\n2\n");
  CHECK_THROWS(load_dataset_csv(onecol.path));

  Dataset bad;
  bad.Xi = Eigen::MatrixXd::Zero(2, 1);
  bad.y = Eigen::VectorXd::Zero(3);
  CHECK_THROWS(bad.validate());
}
