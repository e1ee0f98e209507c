#ifndef CLRS_BUNDLE_HPP
#define CLRS_BUNDLE_HPP

// Problem bundles and solution files.
//
// Both are structured JSON text.  Every numeric value is stored as a decimal
// string rendered by to_string(BigFloat), which parses back to the exact same
// bits at the precision it was written with; object keys are emitted in
// sorted order.  Together these make write → read → write byte-identical.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "clrs/bigfloat.hpp"
#include "clrs/dense.hpp"
#include "clrs/errors.hpp"
#include "clrs/lowrank.hpp"
#include "clrs/pmp.hpp"
#include "clrs/sdp.hpp"
#include "clrs/solver.hpp"

namespace clrs {

// Creation metadata plus the provenance needed to regenerate the model.
struct BundleManifest {
  long format = 1;
  long precision = 0;        // working precision (bits) the numbers carry
  std::string generator;     // "kissing", "packing", or "custom"
  std::string parameters;    // generator parameters, human-readable
  std::string mode;          // lowering mode "A"/"B", empty for custom payloads
};

// Per-constraint sampling data: sample sets and basis transforms for mapping
// solved SOS blocks back to polynomial space.
struct BundleInput {
  long space_degree = 0;
  std::vector<std::vector<BigFloat>> samples;
  DenseMatrix basis_values;
  DenseMatrix basis_transform;
  std::vector<long> basis_degrees;
};

struct ProblemBundle {
  BundleManifest manifest;
  LoweredProgram lowered;            // SDP payload + report transform + row scalings
  std::vector<BundleInput> inputs;   // empty for custom payloads
};

// Solver output in the transformed basis, tied to its bundle by id.
struct SolutionFile {
  std::string bundle_id;
  std::string status;
  std::size_t iterations = 0;
  BigFloat primal_objective{0}, dual_objective{0}, duality_gap{0};
  BigFloat primal_error{0}, dual_error{0}, mu{0};
  std::vector<std::vector<BigFloat>> x;  // per cluster
  std::vector<BlockDiagMatrix> X;        // per cluster
  std::vector<BigFloat> y;
  std::vector<BlockDiagMatrix> Y;        // per cluster
};

// Malformed or inconsistent bundle/solution text.
struct BadBundle : std::runtime_error {
  explicit BadBundle(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

using Json = nlohmann::json;

inline Json num_json(const BigFloat& v) { return to_string(v); }

inline BigFloat json_num(const Json& j) {
  if (!j.is_string()) throw BadBundle("bundle: expected a decimal-string number");
  return BigFloat(j.get<std::string>());
}

inline Json vec_json(const std::vector<BigFloat>& v) {
  Json j = Json::array();
  for (const auto& e : v) j.push_back(num_json(e));
  return j;
}

inline std::vector<BigFloat> json_vec(const Json& j) {
  std::vector<BigFloat> v;
  v.reserve(j.size());
  for (const auto& e : j) v.push_back(json_num(e));
  return v;
}

inline Json matrix_json(const DenseMatrix& m) {
  Json j;
  j["rows"] = m.rows();
  j["cols"] = m.cols();
  Json data = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t k = 0; k < m.cols(); ++k) data.push_back(num_json(m(i, k)));
  j["data"] = std::move(data);
  return j;
}

inline DenseMatrix json_matrix(const Json& j) {
  std::size_t rows = j.at("rows").get<std::size_t>();
  std::size_t cols = j.at("cols").get<std::size_t>();
  const Json& data = j.at("data");
  if (data.size() != rows * cols) throw BadBundle("bundle: matrix data size mismatch");
  DenseMatrix m(rows, cols);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = json_num(data[pos++]);
  return m;
}

inline Json blockdiag_json(const BlockDiagMatrix& m) {
  Json j = Json::array();
  for (const auto& b : m.blocks()) j.push_back(matrix_json(b));
  return j;
}

inline BlockDiagMatrix json_blockdiag(const Json& j) {
  std::vector<DenseMatrix> blocks;
  blocks.reserve(j.size());
  for (const auto& e : j) blocks.push_back(json_matrix(e));
  return BlockDiagMatrix(std::move(blocks));
}

inline Json constraint_json(const ConstraintMatrix& a) {
  Json entries = Json::array();
  for (const auto& e : a.entries) {
    Json je;
    je["l"] = e.l;
    je["r"] = e.r;
    je["s"] = e.s;
    Json terms = Json::array();
    for (const auto& t : e.terms) {
      Json jt;
      jt["lambda"] = num_json(t.lambda);
      jt["v"] = vec_json(t.v);
      jt["w"] = vec_json(t.w);
      terms.push_back(std::move(jt));
    }
    je["terms"] = std::move(terms);
    entries.push_back(std::move(je));
  }
  return entries;
}

inline ConstraintMatrix json_constraint(const Json& j) {
  ConstraintMatrix a;
  for (const auto& je : j) {
    SubBlockTerms e;
    e.l = je.at("l").get<std::size_t>();
    e.r = je.at("r").get<std::size_t>();
    e.s = je.at("s").get<std::size_t>();
    for (const auto& jt : je.at("terms")) {
      LowRankTerm t;
      t.lambda = json_num(jt.at("lambda"));
      t.v = json_vec(jt.at("v"));
      t.w = json_vec(jt.at("w"));
      e.terms.push_back(std::move(t));
    }
    a.entries.push_back(std::move(e));
  }
  return a;
}

inline Json cluster_json(const Cluster& cl) {
  Json j;
  Json shapes = Json::array();
  for (const auto& s : cl.shapes) shapes.push_back(Json::array({s.base, s.r_count}));
  j["shapes"] = std::move(shapes);
  j["objective"] = blockdiag_json(cl.C);
  Json cons = Json::array();
  for (const auto& a : cl.constraints) cons.push_back(constraint_json(a));
  j["constraints"] = std::move(cons);
  j["coupling"] = matrix_json(cl.B);
  j["constants"] = vec_json(cl.c);
  return j;
}

inline Cluster json_cluster(const Json& j) {
  Cluster cl;
  for (const auto& s : j.at("shapes")) {
    BlockShape shape;
    shape.base = s.at(0).get<std::size_t>();
    shape.r_count = s.at(1).get<std::size_t>();
    cl.shapes.push_back(shape);
  }
  cl.C = json_blockdiag(j.at("objective"));
  for (const auto& a : j.at("constraints")) cl.constraints.push_back(json_constraint(a));
  cl.B = json_matrix(j.at("coupling"));
  cl.c = json_vec(j.at("constants"));
  return cl;
}

// BlockInfo indices use SIZE_MAX as "unset"; stored as -1.
inline Json index_json(std::size_t v) {
  return v == SIZE_MAX ? Json(-1) : Json(static_cast<std::int64_t>(v));
}

inline std::size_t json_index(const Json& j) {
  std::int64_t v = j.get<std::int64_t>();
  return v < 0 ? SIZE_MAX : static_cast<std::size_t>(v);
}

inline Json record_json(const LoweredProgram::ClusterRecord& rec) {
  Json j;
  Json constraints = Json::array();
  for (auto c : rec.constraints) constraints.push_back(c);
  j["constraints"] = std::move(constraints);
  Json blocks = Json::array();
  for (const auto& b : rec.blocks) {
    Json jb;
    jb["constraint"] = index_json(b.constraint);
    jb["weight"] = index_json(b.weight);
    jb["irrep"] = index_json(b.irrep);
    jb["psd_var"] = index_json(b.psd_var);
    jb["basis_size"] = b.basis_size;
    jb["mult"] = b.mult;
    jb["degree_budget"] = b.degree_budget;
    blocks.push_back(std::move(jb));
  }
  j["blocks"] = std::move(blocks);
  Json layout = Json::array();
  for (const auto& row : rec.row_layout)
    layout.push_back(Json::array({index_json(row[0]), index_json(row[1]), index_json(row[2])}));
  j["row_layout"] = std::move(layout);
  j["row_scales"] = vec_json(rec.row_scales);
  return j;
}

inline LoweredProgram::ClusterRecord json_record(const Json& j) {
  LoweredProgram::ClusterRecord rec;
  for (const auto& c : j.at("constraints")) rec.constraints.push_back(c.get<std::size_t>());
  for (const auto& jb : j.at("blocks")) {
    LoweredProgram::BlockInfo b;
    b.constraint = json_index(jb.at("constraint"));
    b.weight = json_index(jb.at("weight"));
    b.irrep = json_index(jb.at("irrep"));
    b.psd_var = json_index(jb.at("psd_var"));
    b.basis_size = jb.at("basis_size").get<std::size_t>();
    b.mult = jb.at("mult").get<std::size_t>();
    b.degree_budget = jb.at("degree_budget").get<long>();
    rec.blocks.push_back(b);
  }
  for (const auto& row : j.at("row_layout"))
    rec.row_layout.push_back({json_index(row.at(0)), json_index(row.at(1)), json_index(row.at(2))});
  rec.row_scales = json_vec(j.at("row_scales"));
  return rec;
}

inline Json input_json(const BundleInput& in) {
  Json j;
  j["space_degree"] = in.space_degree;
  Json samples = Json::array();
  for (const auto& pt : in.samples) samples.push_back(vec_json(pt));
  j["samples"] = std::move(samples);
  j["basis_values"] = matrix_json(in.basis_values);
  j["basis_transform"] = matrix_json(in.basis_transform);
  Json degrees = Json::array();
  for (long dgr : in.basis_degrees) degrees.push_back(dgr);
  j["basis_degrees"] = std::move(degrees);
  return j;
}

inline BundleInput json_input(const Json& j) {
  BundleInput in;
  in.space_degree = j.at("space_degree").get<long>();
  for (const auto& pt : j.at("samples")) in.samples.push_back(json_vec(pt));
  in.basis_values = json_matrix(j.at("basis_values"));
  in.basis_transform = json_matrix(j.at("basis_transform"));
  for (const auto& dgr : j.at("basis_degrees")) in.basis_degrees.push_back(dgr.get<long>());
  return in;
}

}  // namespace detail

inline std::string bundle_to_string(const ProblemBundle& bundle) {
  using detail::Json;
  Json j;
  Json manifest;
  manifest["format"] = bundle.manifest.format;
  manifest["precision"] = bundle.manifest.precision;
  manifest["generator"] = bundle.manifest.generator;
  manifest["parameters"] = bundle.manifest.parameters;
  manifest["mode"] = bundle.manifest.mode;
  j["manifest"] = std::move(manifest);

  Json lowered;
  lowered["report_constant"] = detail::num_json(bundle.lowered.report_constant);
  lowered["report_sign"] = detail::num_json(bundle.lowered.report_sign);
  lowered["num_original_free"] = bundle.lowered.num_original_free;
  Json vech = Json::array();
  for (const auto& e : bundle.lowered.vech_map)
    vech.push_back(Json::array({e.var, e.row, e.col}));
  lowered["vech_map"] = std::move(vech);
  Json records = Json::array();
  for (const auto& rec : bundle.lowered.records) records.push_back(detail::record_json(rec));
  lowered["records"] = std::move(records);

  Json sdp;
  sdp["b"] = detail::vec_json(bundle.lowered.sdp.b);
  Json clusters = Json::array();
  for (const auto& cl : bundle.lowered.sdp.clusters) clusters.push_back(detail::cluster_json(cl));
  sdp["clusters"] = std::move(clusters);
  lowered["sdp"] = std::move(sdp);
  j["lowered"] = std::move(lowered);

  Json inputs = Json::array();
  for (const auto& in : bundle.inputs) inputs.push_back(detail::input_json(in));
  j["inputs"] = std::move(inputs);

  return j.dump(1) + "\n";
}

inline ProblemBundle bundle_from_string(const std::string& text) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw BadBundle(std::string("bundle: parse failure: ") + e.what());
  }
  try {
    ProblemBundle bundle;
    const Json& manifest = j.at("manifest");
    bundle.manifest.format = manifest.at("format").get<long>();
    bundle.manifest.precision = manifest.at("precision").get<long>();
    bundle.manifest.generator = manifest.at("generator").get<std::string>();
    bundle.manifest.parameters = manifest.at("parameters").get<std::string>();
    bundle.manifest.mode = manifest.at("mode").get<std::string>();

    const Json& lowered = j.at("lowered");
    bundle.lowered.report_constant = detail::json_num(lowered.at("report_constant"));
    bundle.lowered.report_sign = detail::json_num(lowered.at("report_sign"));
    bundle.lowered.num_original_free = lowered.at("num_original_free").get<std::size_t>();
    for (const auto& e : lowered.at("vech_map"))
      bundle.lowered.vech_map.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                                         e.at(2).get<std::size_t>()});
    for (const auto& rec : lowered.at("records"))
      bundle.lowered.records.push_back(detail::json_record(rec));

    const Json& sdp = lowered.at("sdp");
    bundle.lowered.sdp.b = detail::json_vec(sdp.at("b"));
    for (const auto& cl : sdp.at("clusters"))
      bundle.lowered.sdp.clusters.push_back(detail::json_cluster(cl));

    for (const auto& in : j.at("inputs")) bundle.inputs.push_back(detail::json_input(in));

    bundle.lowered.sdp.validate();
    return bundle;
  } catch (const BadBundle&) {
    throw;
  } catch (const std::exception& e) {
    throw BadBundle(std::string("bundle: malformed payload: ") + e.what());
  }
}

// 64-bit FNV-1a over the canonical serialization, as 16 hex digits.  Ties a
// solution file to the exact bundle bytes it solves.
inline std::string bundle_id(const std::string& canonical_text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : canonical_text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xF];
    h >>= 4;
  }
  return out;
}

inline std::string bundle_id(const ProblemBundle& bundle) {
  return bundle_id(bundle_to_string(bundle));
}

inline std::string solution_to_string(const SolutionFile& sol) {
  using detail::Json;
  Json j;
  j["bundle_id"] = sol.bundle_id;
  j["status"] = sol.status;
  j["iterations"] = sol.iterations;
  j["primal_objective"] = detail::num_json(sol.primal_objective);
  j["dual_objective"] = detail::num_json(sol.dual_objective);
  j["duality_gap"] = detail::num_json(sol.duality_gap);
  j["primal_error"] = detail::num_json(sol.primal_error);
  j["dual_error"] = detail::num_json(sol.dual_error);
  j["mu"] = detail::num_json(sol.mu);
  Json x = Json::array();
  for (const auto& v : sol.x) x.push_back(detail::vec_json(v));
  j["x"] = std::move(x);
  j["y"] = detail::vec_json(sol.y);
  Json bigx = Json::array();
  for (const auto& m : sol.X) bigx.push_back(detail::blockdiag_json(m));
  j["psd_X"] = std::move(bigx);
  Json bigy = Json::array();
  for (const auto& m : sol.Y) bigy.push_back(detail::blockdiag_json(m));
  j["psd_Y"] = std::move(bigy);
  return j.dump(1) + "\n";
}

inline SolutionFile solution_from_string(const std::string& text) {
  using detail::Json;
  Json j;
  try {
    j = Json::parse(text);
  } catch (const std::exception& e) {
    throw BadBundle(std::string("solution: parse failure: ") + e.what());
  }
  try {
    SolutionFile sol;
    sol.bundle_id = j.at("bundle_id").get<std::string>();
    sol.status = j.at("status").get<std::string>();
    sol.iterations = j.at("iterations").get<std::size_t>();
    sol.primal_objective = detail::json_num(j.at("primal_objective"));
    sol.dual_objective = detail::json_num(j.at("dual_objective"));
    sol.duality_gap = detail::json_num(j.at("duality_gap"));
    sol.primal_error = detail::json_num(j.at("primal_error"));
    sol.dual_error = detail::json_num(j.at("dual_error"));
    sol.mu = detail::json_num(j.at("mu"));
    for (const auto& v : j.at("x")) sol.x.push_back(detail::json_vec(v));
    sol.y = detail::json_vec(j.at("y"));
    for (const auto& m : j.at("psd_X")) sol.X.push_back(detail::json_blockdiag(m));
    for (const auto& m : j.at("psd_Y")) sol.Y.push_back(detail::json_blockdiag(m));
    return sol;
  } catch (const BadBundle&) {
    throw;
  } catch (const std::exception& e) {
    throw BadBundle(std::string("solution: malformed payload: ") + e.what());
  }
}

// ---- file I/O -------------------------------------------------------------------

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw BadBundle("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw BadBundle("cannot write file: " + path);
  out << text;
  if (!out.good()) throw BadBundle("write failed: " + path);
}

inline void write_bundle(const std::string& path, const ProblemBundle& bundle) {
  write_text_file(path, bundle_to_string(bundle));
}

inline ProblemBundle read_bundle(const std::string& path) {
  return bundle_from_string(read_text_file(path));
}

inline void write_solution(const std::string& path, const SolutionFile& sol) {
  write_text_file(path, solution_to_string(sol));
}

inline SolutionFile read_solution(const std::string& path) {
  return solution_from_string(read_text_file(path));
}

// Assembles a bundle from a lowered program, recording the sampling data
// needed for back-transformation.
inline ProblemBundle make_bundle(LoweredProgram lowered, const std::vector<LoweringInput>& inputs,
                                 const std::string& generator, const std::string& parameters,
                                 const std::string& mode) {
  ProblemBundle bundle;
  bundle.manifest.precision = working_precision();
  bundle.manifest.generator = generator;
  bundle.manifest.parameters = parameters;
  bundle.manifest.mode = mode;
  bundle.lowered = std::move(lowered);
  for (const auto& in : inputs) {
    BundleInput bi;
    bi.space_degree = in.space_degree;
    bi.samples = in.samples.points;
    bi.basis_values = in.basis_values;
    bi.basis_transform = in.basis_transform;
    bi.basis_degrees = in.basis_degrees;
    bundle.inputs.push_back(std::move(bi));
  }
  return bundle;
}

}  // namespace clrs

#endif  // CLRS_BUNDLE_HPP
