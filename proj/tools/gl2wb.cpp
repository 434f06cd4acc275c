// gl2wb: build, persist, verify and report.
// Exit codes: 0 pass, 1 fail, 2 inconclusive, 64 usage.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "gl2/dg.hpp"
#include "gl2/gl2_family.hpp"
#include "gl2/iso_check.hpp"
#include "gl2/operators.hpp"
#include "gl2/schur.hpp"
#include "json.hpp"

using namespace gl2;
using json = nlohmann::ordered_json;

namespace {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2, kUsage = 64 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Job {
  std::string command;
  u32 p = 2;
  int n = 1;
  int r = -1;  // schur-report: set to list the blocks of S(2,r)
  std::string word, against, out, format = "json";
  u64 seed = 0;
  long long budget_dim = 20000;
  long long budget_nodes = 1000000;
  std::vector<std::string> files;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

std::vector<int> parse_word(const std::string& s) {
  std::vector<int> w;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
      throw UsageError("bad word: " + s);
    w.push_back(std::stoi(tok));
  }
  return w;
}

std::string ref_name(const std::string& path) { return std::filesystem::path(path).filename().string(); }

const char* name(SearchStatus s) {
  return s == SearchStatus::found ? "found" : s == SearchStatus::none ? "none" : "inconclusive";
}
const char* name(IsoStatus s) {
  return s == IsoStatus::found ? "found" : s == IsoStatus::none ? "none" : "inconclusive";
}

json table_json(const std::map<Bidegree, int>& t) {
  json a = json::array();
  for (auto& [k, d] : t) a.push_back({{"h", k.first}, {"s", k.second}, {"dim", d}});
  return a;
}

json map_json(const SpMap& f) {
  json e = json::array();
  for (int j = 0; j < f.cols; ++j)
    for (auto& [i, v] : f.col[j]) e.push_back({i, j, v});
  return {{"rows", f.rows}, {"cols", f.cols}, {"p", f.p}, {"entries", e}};
}

// Verification record on stdout; artifacts go to --out.
struct Result {
  json rec;
  int code = kPass;
  std::string artifact;  // written to --out when set
};

Result start(const Job& job) {
  Result r;
  r.rec["command"] = job.command;
  r.rec["seed"] = job.seed;
  return r;
}

void set_status(Result& r, int code) {
  r.code = code;
  r.rec["status"] = code == kPass ? "pass" : code == kFail ? "fail" : "inconclusive";
}

std::string render(const json& rec, const std::string& format) {
  if (format == "json") return rec.dump(2) + "\n";
  std::ostringstream o;
  for (auto& [k, v] : rec.items()) o << k << ": " << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
  return o.str();
}

// ---- commands

Result build_algebra(const Job& job, const Algebra& a) {
  Result r = start(job);
  if (a.dim() > job.budget_dim) {
    r.rec["reason"] = "dimension exceeds --budget-dim";
    set_status(r, kInconclusive);
    return r;
  }
  r.artifact = algebra_to_json(a);
  r.rec["dim"] = a.dim();
  r.rec["vertices"] = a.num_vertices();
  set_status(r, kPass);
  return r;
}

Result cmd_build(const Job& job) {
  SearchLimits lim;
  lim.seed = job.seed;
  if (job.command == "build-an") return build_algebra(job, build_An(job.p, job.n));
  if (job.command == "build-cp") return build_algebra(job, build_cp(job.p));
  if (job.command == "build-cn") return build_algebra(job, *cn_iterate(job.p, job.n, job.budget_dim, lim)[job.n].c);
  return build_algebra(job, *op_p_iterate(job.p, job.n, job.budget_dim)[job.n].e.alg);
}

// blocks of S(2,r) without the comparison
Result cmd_schur_blocks(const Job& job) {
  Result r = start(job);
  CommutantAlgebra s = build_schur(job.p, job.r);
  long long want = static_cast<long long>(job.r + 3) * (job.r + 2) * (job.r + 1) / 6;
  BlockSplit bs = block_split(*s.alg, job.seed);
  json blocks = json::array();
  for (auto& b : bs.blocks) blocks.push_back({{"simple_dims", b.simple_dims}, {"corner_dim", b.corner_dim}, {"cartan", b.cartan}});
  r.rec["r"] = job.r;
  r.rec["dim"] = s.alg->dim();
  r.rec["expected_dim"] = want;
  r.rec["blocks"] = blocks;
  r.artifact = r.rec.dump(2) + "\n";
  set_status(r, s.alg->dim() == want ? kPass : kFail);
  return r;
}

Result cmd_schur(const Job& job) {
  if (job.r >= 0) return cmd_schur_blocks(job);
  Result r = start(job);
  SchurReport rep = gl2_block_report(job.p, job.n, job.seed);
  r.artifact = rep.to_json();
  r.rec = json::parse(rep.to_json());
  r.rec["command"] = job.command;
  if (!rep.found_block || !rep.cartan_match || rep.iso == IsoStatus::none)
    set_status(r, kFail);
  else
    set_status(r, rep.iso == IsoStatus::found ? kPass : kInconclusive);
  if (job.format == "text") r.rec["report"] = rep.to_text();
  return r;
}

Result cmd_verify_iso(const Job& job) {
  if (job.files.size() != 2) throw UsageError("verify-iso needs two algebra files");
  Result r = start(job);
  Algebra a = algebra_from_json(read_file(job.files[0]));
  Algebra b = algebra_from_json(read_file(job.files[1]));
  IsoOptions opt;
  opt.node_budget = job.budget_nodes;
  IsoResult res = find_iso(a, b, opt);
  r.rec["source"] = ref_name(job.files[0]);
  r.rec["target"] = ref_name(job.files[1]);
  r.rec["iso"] = name(res.status);
  r.rec["nodes"] = res.nodes;
  if (!res.reason.empty()) r.rec["reason"] = res.reason;
  if (res.status == IsoStatus::found) {
    bool ok = verify_iso(a, b, *res.cert);
    r.rec["verified"] = ok;
    r.artifact = certificate_to_json(*res.cert, ref_name(job.files[0]), ref_name(job.files[1]));
    set_status(r, ok ? kPass : kFail);
  } else {
    set_status(r, res.status == IsoStatus::none ? kFail : kInconclusive);
  }
  return r;
}

Result cmd_filtration(const Job& job) {
  Result r = start(job);
  Algebra an = build_An(job.p, job.n);
  json rows = json::array();
  bool ok = true;
  for (auto& v : an.vertices) {
    VertexTuple a = parse_tuple_label(v);
    std::string want = expected_shape(a[job.n], job.p, job.n), got;
    try {
      got = filtration_profile(an, job.p, job.n, a).shape;
    } catch (const AlgebraError& e) {
      got = e.what();
    }
    ok = ok && got == want;
    rows.push_back({{"vertex", v}, {"shape", got}, {"expected", want}});
  }
  r.rec["vertices"] = rows;
  set_status(r, ok ? kPass : kFail);
  return r;
}

Result cmd_tight(const Job& job) {
  Result r = start(job);
  json rows = json::array();
  bool ok = true;
  auto check = [&](const std::string& label, const Algebra& a) {
    bool t = tightness_check(a);
    ok = ok && t;
    rows.push_back({{"algebra", label}, {"dim", a.dim()}, {"tight", t}});
  };
  if (!job.files.empty()) {
    for (auto& f : job.files) check(ref_name(f), algebra_from_json(read_file(f)));
  } else {
    check("A_" + std::to_string(job.n), build_An(job.p, job.n));
    check("E_" + std::to_string(job.n), *op_p_iterate(job.p, job.n, job.budget_dim)[job.n].e.alg);
  }
  r.rec["algebras"] = rows;
  set_status(r, ok ? kPass : kFail);
  return r;
}

Result cmd_braid(const Job& job) {
  Result r = start(job);
  auto c = graded_cp(job.p);
  std::vector<int> w1 = parse_word(job.word), w2 = parse_word(job.against);
  Complex x = braid_word_complex(c, w1), y = braid_word_complex(c, w2);
  SearchLimits lim;
  lim.seed = job.seed;
  QuasiIsoResult q = quasi_iso_certificate(x, y, lim);
  r.rec["word"] = w1;
  r.rec["against"] = w2;
  r.rec["dims"] = {x.dim(), y.dim()};
  r.rec["table"] = table_json(homology(x, false).dims);
  r.rec["tables_equal"] = q.tables_equal;
  r.rec["quasi_iso"] = name(q.status);
  if (!q.reason.empty()) r.rec["reason"] = q.reason;
  if (q.map) {
    json art = {{"schema", "chainmap-v1"}, {"p", job.p}, {"word", w1}, {"against", w2}, {"map", map_json(*q.map)}};
    r.artifact = art.dump(2) + "\n";
  }
  if (!q.tables_equal || q.status == SearchStatus::none)
    set_status(r, kFail);
  else
    set_status(r, q.status == SearchStatus::found ? kPass : kInconclusive);
  return r;
}

Result cmd_gamma(const Job& job) {
  Result r = start(job);
  auto c = graded_cp(job.p);
  Complex x = braid_word_complex(c, parse_word(job.word));
  auto f = share(field_algebra(job.p, 1));
  Complex t = complex_from_bimodule(regular_bimodule(f));
  GammaResult g = endomorphism_gamma_check(c, c, x, f, t);
  r.rec["word"] = parse_word(job.word);
  r.rec["gamma"] = name(g.status);
  r.rec["source"] = table_json(g.source);
  r.rec["target"] = table_json(g.target);
  if (!g.reason.empty()) r.rec["reason"] = g.reason;
  set_status(r, g.status == SearchStatus::found ? kPass
                 : g.status == SearchStatus::none ? kFail
                                                  : kInconclusive);
  return r;
}

Result cmd_selfdual(const Job& job) {
  Result r = start(job);
  Bimodule x = job.n <= 1 ? standard_pair(job.p).x : op_p_iterate(job.p, job.n, job.budget_dim)[job.n].x;
  SearchLimits lim;
  lim.seed = job.seed;
  IsoSearch s = self_duality(x, lim);
  r.rec["bimodule_dim"] = x.dim;
  r.rec["self_duality"] = name(s.status);
  r.rec["space_dim"] = s.space_dim;
  if (s.map) {
    Bimodule d = dual(x);
    bool ok = is_bimodule_map(x, d, *s.map);
    r.rec["verified"] = ok;
    json art = {{"schema", "selfduality-v1"}, {"p", job.p}, {"n", job.n}, {"map", map_json(*s.map)}};
    r.artifact = art.dump(2) + "\n";
    set_status(r, ok ? kPass : kFail);
  } else {
    set_status(r, s.status == SearchStatus::none ? kFail : kInconclusive);
  }
  return r;
}

// load then save in canonical form
std::string canonical(const std::string& text, json& info) {
  json j = json::parse(text);
  std::string schema = j.value("schema", "");
  info["schema"] = schema;
  if (schema == "algebra-v1") {
    Algebra a = algebra_from_json(text);
    bool ok = !a.associativity_witness() && a.vertex_structure_ok() && a.grading_respected();
    info["dim"] = a.dim();
    info["valid"] = ok;
    return algebra_to_json(a);
  }
  if (schema == "isocert-v1") {
    IsoCertificate c = certificate_from_json(text);
    info["dim"] = c.map.cols;
    info["valid"] = true;
    return certificate_to_json(c, j.value("source_ref", ""), j.value("target_ref", ""));
  }
  throw UsageError("unsupported schema: " + schema);
}

Result cmd_export_import(const Job& job) {
  if (job.files.size() != 1) throw UsageError(job.command + " needs one artifact file");
  Result r = start(job);
  json info;
  std::string text = read_file(job.files[0]);
  std::string canon = canonical(text, info);
  for (auto& [k, v] : info.items()) r.rec[k] = v;
  r.rec["canonical"] = canon == text;
  if (job.command == "export") r.artifact = canon;
  set_status(r, info.value("valid", false) ? kPass : kFail);
  return r;
}

Result run(const Job& job) {
  if (job.p < 2 || !is_prime(job.p)) throw UsageError("--p must be prime");
  if (job.n < 0 || job.budget_dim <= 0 || job.budget_nodes <= 0) throw UsageError("budgets and --n must be positive");
  if (job.format != "json" && job.format != "text") throw UsageError("--format is json or text");
  const std::string& c = job.command;
  if (c.rfind("build-", 0) == 0) return cmd_build(job);
  if (c == "schur-report") return cmd_schur(job);
  if (c == "verify-iso") return cmd_verify_iso(job);
  if (c == "filtration-check") return cmd_filtration(job);
  if (c == "tight-check") return cmd_tight(job);
  if (c == "braid") return cmd_braid(job);
  if (c == "gamma-check") return cmd_gamma(job);
  if (c == "selfdual-check") return cmd_selfdual(job);
  return cmd_export_import(job);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gl2wb: GL2 block algebras, complexes and Schur algebras"};
  app.require_subcommand(1);
  Job job;
  const std::vector<std::pair<std::string, std::string>> commands = {
      {"build-an", "write A_n as algebra-v1"},
      {"build-cp", "write c_p as algebra-v1"},
      {"build-cn", "write C_n as algebra-v1"},
      {"build-en", "write E_n as algebra-v1"},
      {"schur-report", "principal Schur block against A_n"},
      {"verify-iso", "isomorphism certificate between two algebra files"},
      {"filtration-check", "filtration shapes of the projectives of A_n"},
      {"tight-check", "tightness of algebra files, or of A_n and E_n"},
      {"braid", "compare the complexes of two braid words over c_p"},
      {"gamma-check", "endomorphism check for a braid word complex over c_p"},
      {"selfdual-check", "self-duality of x_p (n = 1) or X_n"},
      {"export", "load an artifact and write it in canonical form"},
      {"import", "load and validate an artifact"},
  };
  for (auto& [cmd, desc] : commands) {
    CLI::App* s = app.add_subcommand(cmd, desc);
    s->add_option("--p", job.p, "prime");
    s->add_option("--n", job.n, "level");
    s->add_option("--r", job.r, "degree");
    s->add_option("--word", job.word, "comma-separated braid word");
    s->add_option("--against", job.against, "second braid word");
    s->add_option("--out", job.out, "artifact path");
    s->add_option("--seed", job.seed, "random seed");
    s->add_option("--budget-dim", job.budget_dim, "dimension budget");
    s->add_option("--budget-nodes", job.budget_nodes, "search node budget");
    s->add_option("--format", job.format, "json or text");
    s->add_option("files", job.files, "input files");
    s->callback([&job, c = cmd] { job.command = c; });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  Result r;
  try {
    r = run(job);
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::string what = e.what();
    r = start(job);
    r.rec["reason"] = what;
    bool budget = dynamic_cast<const BudgetError*>(&e) || what.rfind("budget", 0) == 0;
    set_status(r, budget ? kInconclusive : kFail);
  }
  if (!r.artifact.empty() && !job.out.empty()) {
    try {
      write_file(job.out, r.artifact);
    } catch (const UsageError& e) {
      std::cerr << "usage: " << e.what() << "\n";
      return kUsage;
    }
    r.rec["out"] = job.out;
  }
  bool artifact_on_stdout = job.out.empty() && !r.artifact.empty() &&
                            (job.command.rfind("build-", 0) == 0 || job.command == "export");
  if (artifact_on_stdout)
    std::cout << r.artifact;
  else if (r.rec.contains("report"))
    std::cout << r.rec["report"].get<std::string>();
  else
    std::cout << render(r.rec, job.format);
  return r.code;
}
