// Bundle and solution-file serialization: byte-identical round-trips, exact
// numeric recovery, id hashing, and rejection of malformed payloads.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <string>

#include "clrs/bundle.hpp"
#include "clrs/models.hpp"

#include "helpers.hpp"

using namespace clrs;
using clrs_tests::Rng;

namespace {

// A small but fully featured bundle: kissing model exercises multivariate
// domains, mode-B vech links, and row rescaling.
ProblemBundle small_bundle() {
  KissingModelSpec spec;
  spec.n = 3;
  spec.d = 2;
  KissingModel model = kissing_model(spec);
  LoweredProgram lowered = lower(model.program, model.inputs, LoweringMode::B);
  return make_bundle(std::move(lowered), model.inputs, "kissing", "n=3 d=2 mode=B", "B");
}

// Full-precision random value: exercises every bit of the decimal encoding.
BigFloat random_full_precision(Rng& rng) {
  BigFloat v(0);
  for (int i = 0; i < 5; ++i) {
    v = v * BigFloat(9007199254740992.0) + BigFloat(rng.next_unit());
  }
  return v;
}

std::string temp_path(const char* name) {
  return std::string("/tmp/clrs_test_") + name;
}

}  // namespace

TEST_CASE("bundle text round-trips byte-identically", "[bundle]") {
  ProblemBundle bundle = small_bundle();

  const std::string once = bundle_to_string(bundle);
  ProblemBundle reread = bundle_from_string(once);
  const std::string twice = bundle_to_string(reread);
  REQUIRE(once == twice);

  // Through the filesystem as well.
  const std::string path = temp_path("bundle.json");
  write_bundle(path, bundle);
  ProblemBundle from_disk = read_bundle(path);
  REQUIRE(bundle_to_string(from_disk) == once);
  std::remove(path.c_str());
}

TEST_CASE("bundle numbers are recovered exactly", "[bundle]") {
  ProblemBundle bundle = small_bundle();
  ProblemBundle reread = bundle_from_string(bundle_to_string(bundle));

  REQUIRE(reread.lowered.sdp.b.size() == bundle.lowered.sdp.b.size());
  for (std::size_t i = 0; i < bundle.lowered.sdp.b.size(); ++i)
    REQUIRE(reread.lowered.sdp.b[i] == bundle.lowered.sdp.b[i]);

  REQUIRE(reread.lowered.sdp.clusters.size() == bundle.lowered.sdp.clusters.size());
  const Cluster& a = bundle.lowered.sdp.clusters[0];
  const Cluster& b = reread.lowered.sdp.clusters[0];
  REQUIRE(a.B.rows() == b.B.rows());
  REQUIRE(a.B.cols() == b.B.cols());
  for (std::size_t i = 0; i < a.B.rows(); ++i)
    for (std::size_t j = 0; j < a.B.cols(); ++j) REQUIRE(a.B(i, j) == b.B(i, j));

  REQUIRE(!a.constraints.empty());
  const SubBlockTerms& ea = a.constraints[0].entries.at(0);
  const SubBlockTerms& eb = b.constraints[0].entries.at(0);
  REQUIRE(ea.l == eb.l);
  REQUIRE(ea.terms.size() == eb.terms.size());
  REQUIRE(ea.terms[0].lambda == eb.terms[0].lambda);
  for (std::size_t i = 0; i < ea.terms[0].v.size(); ++i)
    REQUIRE(ea.terms[0].v[i] == eb.terms[0].v[i]);

  // Back-transform record survives: report transform, vech map, row scales,
  // sampling inputs.
  REQUIRE(reread.lowered.report_constant == bundle.lowered.report_constant);
  REQUIRE(reread.lowered.report_sign == bundle.lowered.report_sign);
  REQUIRE(reread.lowered.num_original_free == bundle.lowered.num_original_free);
  REQUIRE(reread.lowered.vech_map.size() == bundle.lowered.vech_map.size());
  REQUIRE(reread.lowered.vech_map.back().col == bundle.lowered.vech_map.back().col);
  REQUIRE(reread.lowered.records.size() == bundle.lowered.records.size());
  const auto& ra = bundle.lowered.records[0];
  const auto& rb = reread.lowered.records[0];
  REQUIRE(ra.blocks.size() == rb.blocks.size());
  REQUIRE(ra.blocks[0].constraint == rb.blocks[0].constraint);
  REQUIRE(ra.blocks[0].degree_budget == rb.blocks[0].degree_budget);
  REQUIRE(ra.row_layout == rb.row_layout);
  for (std::size_t i = 0; i < ra.row_scales.size(); ++i)
    REQUIRE(ra.row_scales[i] == rb.row_scales[i]);

  REQUIRE(reread.inputs.size() == bundle.inputs.size());
  REQUIRE(!bundle.inputs.empty());
  const BundleInput& ia = bundle.inputs[0];
  const BundleInput& ib = reread.inputs[0];
  REQUIRE(ia.space_degree == ib.space_degree);
  REQUIRE(ia.samples.size() == ib.samples.size());
  for (std::size_t p = 0; p < ia.samples.size(); ++p)
    for (std::size_t k = 0; k < ia.samples[p].size(); ++k)
      REQUIRE(ia.samples[p][k] == ib.samples[p][k]);
  REQUIRE(ia.basis_degrees == ib.basis_degrees);
  for (std::size_t i = 0; i < ia.basis_transform.rows(); ++i)
    for (std::size_t j = 0; j < ia.basis_transform.cols(); ++j)
      REQUIRE(ia.basis_transform(i, j) == ib.basis_transform(i, j));
}

TEST_CASE("bundle id is stable and detects perturbation", "[bundle]") {
  ProblemBundle bundle = small_bundle();
  const std::string id1 = bundle_id(bundle);
  const std::string id2 = bundle_id(bundle);
  REQUIRE(id1 == id2);
  REQUIRE(id1.size() == 16);

  ProblemBundle tweaked = bundle;
  tweaked.lowered.sdp.clusters[0].c[0] += BigFloat(1) / BigFloat(1000000);
  REQUIRE(bundle_id(tweaked) != id1);

  ProblemBundle relabeled = bundle;
  relabeled.manifest.parameters = "n=3 d=2 mode=B tweak";
  REQUIRE(bundle_id(relabeled) != id1);
}

TEST_CASE("solution file round-trips with exact numbers", "[bundle]") {
  Rng rng(77);
  SolutionFile sol;
  sol.bundle_id = "00ff00ff00ff00ff";
  sol.status = "Optimal";
  sol.iterations = 42;
  sol.primal_objective = random_full_precision(rng);
  sol.dual_objective = random_full_precision(rng);
  sol.duality_gap = random_full_precision(rng);
  sol.primal_error = random_full_precision(rng);
  sol.dual_error = random_full_precision(rng);
  sol.mu = random_full_precision(rng);
  sol.x.push_back({random_full_precision(rng), random_full_precision(rng)});
  sol.y = {random_full_precision(rng)};
  DenseMatrix m1(2, 2), m2(1, 1);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) m1(i, j) = random_full_precision(rng);
  m2(0, 0) = random_full_precision(rng);
  sol.X.emplace_back(std::vector<DenseMatrix>{m1, m2});
  sol.Y.emplace_back(std::vector<DenseMatrix>{m2, m1});

  const std::string once = solution_to_string(sol);
  SolutionFile reread = solution_from_string(once);
  REQUIRE(solution_to_string(reread) == once);

  REQUIRE(reread.bundle_id == sol.bundle_id);
  REQUIRE(reread.status == sol.status);
  REQUIRE(reread.iterations == sol.iterations);
  REQUIRE(reread.primal_objective == sol.primal_objective);
  REQUIRE(reread.dual_objective == sol.dual_objective);
  REQUIRE(reread.mu == sol.mu);
  REQUIRE(reread.x[0][1] == sol.x[0][1]);
  REQUIRE(reread.y[0] == sol.y[0]);
  REQUIRE(reread.X[0].block(0)(1, 0) == sol.X[0].block(0)(1, 0));
  REQUIRE(reread.Y[0].block(1)(0, 1) == sol.Y[0].block(1)(0, 1));

  const std::string path = temp_path("solution.json");
  write_solution(path, sol);
  SolutionFile from_disk = read_solution(path);
  REQUIRE(solution_to_string(from_disk) == once);
  std::remove(path.c_str());
}

TEST_CASE("malformed payloads are rejected", "[bundle]") {
  REQUIRE_THROWS_AS(bundle_from_string("not json at all"), BadBundle);
  REQUIRE_THROWS_AS(bundle_from_string("{}"), BadBundle);
  REQUIRE_THROWS_AS(solution_from_string("[1,2,3"), BadBundle);
  REQUIRE_THROWS_AS(read_bundle("/nonexistent/path/bundle.json"), BadBundle);

  // Numbers must be decimal strings, not JSON numbers.
  ProblemBundle bundle = small_bundle();
  std::string text = bundle_to_string(bundle);
  const std::string needle = "\"report_sign\": \"";
  auto pos = text.find(needle);
  REQUIRE(pos != std::string::npos);
  // Replace the quoted decimal string with a bare JSON number.
  auto end = text.find('"', pos + needle.size());
  text.replace(pos, end + 1 - pos, "\"report_sign\": 1");
  REQUIRE_THROWS_AS(bundle_from_string(text), BadBundle);

  // Matrix data length mismatches are caught.
  std::string text2 = bundle_to_string(bundle);
  const std::string rows_needle = "\"rows\": ";
  auto rpos = text2.find(rows_needle);
  REQUIRE(rpos != std::string::npos);
  text2.insert(rpos + rows_needle.size(), "9");
  REQUIRE_THROWS_AS(bundle_from_string(text2), BadBundle);
}
