// Acceptance suite: one line per criterion, nonzero exit when any fails.
// Criterion 9 drives the installed command-line binary (path given as
// argv[1]) twice and compares every produced byte.

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sl4branch/decompose.hpp"
#include "sl4branch/render.hpp"
#include "sl4branch/structure.hpp"

using namespace sl4branch;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

bool report_all(Outcome& out, const VerificationReport& rep) {
  for (const ClauseResult& c : rep.clauses)
    out.require(c.pass, rep.target + ": " + c.name + " (expected " + c.expected +
                            ", got " + c.actual + ")");
  return rep.pass();
}

// ---- criterion 1: structural facts, exact arithmetic ----------------------
Outcome criterion_structure(double budget_ms) {
  Outcome out;
  auto t0 = Clock::now();
  report_all(out, structure_report());
  report_all(out, pseudo_dual_report());
  double elapsed = ms_since(t0);
  out.require(elapsed < budget_ms, "structure suite took " + std::to_string(elapsed) + " ms");
  return out;
}

// ---- criterion 2: closed-form restriction vs. weight peeling --------------
Outcome criterion_branching_rules(double budget_ms) {
  Outcome out;
  auto t0 = Clock::now();
  int cases = 0;
  for (long long a = 0; a <= 12; ++a)
    for (long long b = -a; b <= a; ++b) {
      SO4Irrep r(a, b);
      ++cases;
      for (U2Variant v : {U2Variant::V1, U2Variant::V2}) {
        auto fast = restrict_so4(r, v);
        auto slow = restrict_so4_oracle(r, v);
        out.require(fast == slow, "restriction mismatch at (" + std::to_string(a) +
                                      "," + std::to_string(b) + ")");
        long long dim = 0;
        for (const auto& [c, m] : fast) dim += m * c.dim();
        out.require(dim == r.dim(), "dimension loss at (" + std::to_string(a) + "," +
                                        std::to_string(b) + ")");
      }
    }
  out.require(cases == 169, "expected 169 dominant labels, saw " + std::to_string(cases));
  double elapsed = ms_since(t0);
  out.require(elapsed < budget_ms, "sweep took " + std::to_string(elapsed) + " ms");
  return out;
}

// ---- criterion 3: cone decomposition at box 60 -----------------------------
Outcome criterion_sp_decomposition(double budget_ms) {
  Outcome out;
  auto t0 = Clock::now();
  long long N = 60;
  RestrictionResult res = restrict_module(ModuleDescriptor::aq(0), U2Variant::V1, N);
  out.require(res.all_finite(), "restriction not finite");
  DecompositionCertificate cert = decompose(res.table, PeelFamily::SpCones, N);
  out.require(cert.exact, "residual not zero");
  out.require(cert.summands.size() == 58, "expected summands sp:0..sp:57, got " +
                                              std::to_string(cert.summands.size()));
  for (size_t i = 0; i < cert.summands.size(); ++i) {
    out.require(cert.summands[i].first.floor == static_cast<long long>(i) + 3,
                "cone floors not contiguous");
    out.require(cert.summands[i].second == 1, "cone multiplicity above one");
  }
  for (long long n = 3; n <= N; ++n)
    out.require(res.table.at(U2Irrep(U2Variant::V1, {n, n})) == n - 2,
                "diagonal multiplicity at (" + std::to_string(n) + "," +
                    std::to_string(n) + ") is not n-2");
  double elapsed = ms_since(t0);
  out.require(elapsed < budget_ms, "took " + std::to_string(elapsed) + " ms");
  return out;
}

// ---- criterion 4: ray decomposition at box 60 ------------------------------
Outcome criterion_gl_decomposition(double budget_ms) {
  Outcome out;
  auto t0 = Clock::now();
  long long N = 60;
  RestrictionResult res = restrict_module(ModuleDescriptor::aq(0), U2Variant::V1, N);
  DecompositionCertificate cert = decompose(res.table, PeelFamily::GlRays, N);
  out.require(cert.exact, "residual not zero");
  out.require(cert.multiplicity_free(), "a ray repeats");
  std::set<Weight> minimals;
  for (const auto& [s, m] : cert.summands) {
    (void)m;
    minimals.insert(s.ray_min);
  }
  std::set<Weight> box;
  for (long long x = 3; x <= N; ++x)
    for (long long y = 3; y <= N; ++y)
      if ((x + y) % 2 == 0) box.insert({x, y});
  out.require(minimals == box, "minimal types differ from the even box");
  std::set<Weight> tensor_list;
  for (long long m1 = 0; 3 + m1 <= N; ++m1)
    for (long long m2 = 0; 3 + m1 + m2 <= N; ++m2)
      for (long long i = -m2; i <= m2; ++i) {
        Weight w{3 + m1 + m2 + i, 3 + m1 + m2 - i};
        if (w.norm() <= N) tensor_list.insert(w);
      }
  out.require(minimals == tensor_list, "minimal types differ from the tensor list");
  double elapsed = ms_since(t0);
  out.require(elapsed < budget_ms, "took " + std::to_string(elapsed) + " ms");
  return out;
}

// ---- criterion 5: admissible/non-admissible dichotomy ----------------------
Outcome criterion_admissibility() {
  Outcome out;
  struct Expect {
    ModuleDescriptor d;
    U2Variant v;
    bool admissible;
  };
  std::vector<Expect> expects = {
      {ModuleDescriptor::aq(0), U2Variant::V1, true},
      {ModuleDescriptor::aq(0), U2Variant::V2, false},
      {ModuleDescriptor::aq_prime(0), U2Variant::V1, false},
      {ModuleDescriptor::aq_prime(0), U2Variant::V2, true},
  };
  for (const Expect& e : expects) {
    AdmissibilityVerdict v = admissibility(e.d, e.v);
    out.require(v.admissible == e.admissible,
                e.d.text() + " under " + variant_name(e.v) + " misjudged");
    if (!e.admissible) {
      out.require(v.witness.has_value(), "missing witness for " + e.d.text());
      out.require(!v.direction.empty(), "missing direction for " + e.d.text());
      if (v.witness)
        out.require(*v.witness == U2Irrep(e.v, {0, 0}),
                    "witness should be the trivial character");
    }
  }
  // flip equivariance across the sweep
  for (long long a = 0; a <= 12; ++a)
    for (long long b = -a; b <= a; ++b) {
      auto lhs = restrict_so4(SO4Irrep(a, b).flipped(), U2Variant::V2);
      auto rhs = restrict_so4(SO4Irrep(a, b), U2Variant::V1);
      for (auto& [r, m] : rhs) r = r.flipped();
      std::sort(rhs.begin(), rhs.end());
      out.require(lhs == rhs, "flip equivariance fails at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
    }
  return out;
}

// ---- criterion 6: the reducible member and its factors ---------------------
Outcome criterion_reducible_family() {
  Outcome out;
  long long N = 40;
  auto factors = composition_factors(ModuleDescriptor::aq(-3));
  MultTable<Weight> parent = ktypes(ModuleDescriptor::aq(-3), N);
  MultTable<Weight> f0 = ktypes(factors[0], N);
  MultTable<Weight> f1 = ktypes(factors[1], N);
  for (long long x = -N; x <= N && out.pass; ++x)
    for (long long y = -N; y <= N; ++y)
      if (parent.at({x, y}) != f0.at({x, y}) + f1.at({x, y})) {
        out.require(false, "k-type partition fails at " + Weight{x, y}.str());
        break;
      }

  BranchingReport ladder_sp = verify_branching(ModuleDescriptor::ladder(), Subgroup::H1, N);
  report_all(out, ladder_sp.report);
  out.require(ladder_sp.certificate.summands.size() == 1 &&
                  ladder_sp.certificate.summands.front().first == SummandId::sp_cone(0),
              "ladder restriction is not the single spherical cone");

  BranchingReport ladder_gl = verify_branching(ModuleDescriptor::ladder(), Subgroup::H1p, N);
  report_all(out, ladder_gl.report);

  BranchingReport aqm3 = verify_branching(ModuleDescriptor::aq(-3), Subgroup::H1, N);
  report_all(out, aqm3.report);
  return out;
}

// ---- criterion 7: pseudo-dual grid -----------------------------------------
Outcome criterion_grid() {
  Outcome out;
  GridReport grid = pseudo_dual_grid(20);
  report_all(out, grid.report);
  return out;
}

// ---- criterion 8: multiplicity one everywhere ------------------------------
Outcome criterion_multiplicity_one() {
  Outcome out;
  long long N = 40;
  std::vector<std::pair<ModuleDescriptor, Subgroup>> pairs = {
      {ModuleDescriptor::aq(0), Subgroup::H1},
      {ModuleDescriptor::aq(0), Subgroup::H1p},
      {ModuleDescriptor::aq(-2), Subgroup::H1},
      {ModuleDescriptor::aq(-2), Subgroup::H1p},
      {ModuleDescriptor::aq(-3), Subgroup::H1},
      {ModuleDescriptor::aq(-3), Subgroup::H1p},
      {ModuleDescriptor::ladder(), Subgroup::H1},
      {ModuleDescriptor::ladder(), Subgroup::H1p},
  };
  for (const auto& [d, sg] : pairs) {
    RestrictionResult res = restrict_module(d, U2Variant::V1, N);
    DecompositionCertificate cert = decompose(
        res.table, sg == Subgroup::H1 ? PeelFamily::SpCones : PeelFamily::GlRays, N);
    std::set<std::string> seen;
    for (const auto& [s, m] : cert.summands) {
      out.require(m == 1, d.text() + ": summand " + s.text() + " has multiplicity " +
                              std::to_string(m));
      out.require(seen.insert(s.text()).second,
                  d.text() + ": summand " + s.text() + " listed twice");
    }
  }
  return out;
}

// ---- criterion 9: byte-identical CLI artifacts ------------------------------
struct CliCall {
  std::string name;
  std::string args;
  int expected_code;
};

const std::vector<CliCall>& cli_suite() {
  static const std::vector<CliCall> suite = {
      {"ktypes-aq0.tsv", "ktypes --module aq:0 --max 8", 0},
      {"ktypes-ladder.tsv", "ktypes --module ladder --max 6", 0},
      {"ktypes-aqprime.json", "ktypes --module aqprime:0 --max 8 --format json", 0},
      {"ktypes-sp0.tsv", "ktypes --module sp:0 --max 8", 0},
      {"ktypes-bad.err", "ktypes --module aq:-4 --max 4", 2},
      {"restrict-sp.json", "restrict --module aq:0 --subgroup sp --max 12 --format json", 0},
      {"restrict-sp2.json", "restrict --module aq:0 --subgroup sp2 --max 6 --format json", 0},
      {"restrict-v2.tsv", "restrict --module ladder --variant V2 --max 8", 0},
      {"admissible-aq-sp.json", "admissible --module aq:0 --subgroup sp --format json", 0},
      {"admissible-aq-sp2.json", "admissible --module aq:0 --subgroup sp2 --format json", 0},
      {"admissible-aqprime-sp.json", "admissible --module aqprime:0 --subgroup sp --format json", 0},
      {"admissible-aqprime-gl2.json", "admissible --module aqprime:0 --subgroup gl2 --format json", 0},
      {"decompose-sp.json", "decompose --module aq:0 --subgroup sp --max 40 --format json", 0},
      {"decompose-gl.json", "decompose --module aq:0 --subgroup gl --max 40 --format json", 0},
      {"decompose-ladder.tsv", "decompose --module ladder --subgroup sp --max 40", 0},
      {"verify-structure.json", "verify structure --format json", 0},
      {"verify-branching-sp.json", "verify branching --module aq:0 --subgroup sp --max 40", 0},
      {"verify-branching-gl.json", "verify branching --module aq:0 --subgroup gl --max 40", 0},
      {"verify-branching-aqm3.json", "verify branching --module aq:-3 --subgroup sp --max 40", 0},
      {"verify-grid.json", "verify grid --max 20", 0},
      {"grid.json", "grid --max 12 --format json", 0},
      {"figures", "figures --max 11", 0},  // --out appended per run
  };
  return suite;
}

int run_cli(const std::string& cli, const std::string& args, const fs::path& out_file) {
  std::string cmd = cli + " " + args + " > " + out_file.string() + " 2>&1";
  int raw = std::system(cmd.c_str());
  if (raw == -1) return -1;
  return WEXITSTATUS(raw);
}

bool run_suite_into(const std::string& cli, const fs::path& dir, Outcome& out) {
  fs::create_directories(dir);
  std::ofstream manifest(dir / "manifest.tsv", std::ios::binary);
  for (const CliCall& call : cli_suite()) {
    std::string args = call.args;
    fs::path target = dir / call.name;
    if (call.name == "figures") {
      args += " --out " + (dir / "figures").string();
      target = dir / "figures.log";
    }
    int code = run_cli(cli, args, target);
    manifest << call.name << '\t' << call.args << '\t' << code << '\n';
    out.require(code == call.expected_code,
                call.name + ": exit " + std::to_string(code) + ", expected " +
                    std::to_string(call.expected_code));
  }
  return out.pass;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

Outcome criterion_determinism(const std::string& cli, double budget_ms) {
  Outcome out;
  if (cli.empty()) {
    out.require(false, "no CLI path given (pass it as argv[1])");
    return out;
  }
  auto t0 = Clock::now();
  fs::path base = fs::temp_directory_path() /
                  ("sl4branch-accept-" + std::to_string(::getpid()));
  fs::remove_all(base);
  fs::path run1 = base / "run1", run2 = base / "run2";
  run_suite_into(cli, run1, out);
  run_suite_into(cli, run2, out);

  // collect relative file lists and compare bytes
  auto relative_files = [](const fs::path& root) {
    std::set<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
      if (e.is_regular_file()) files.insert(fs::relative(e.path(), root));
    return files;
  };
  auto files1 = relative_files(run1);
  auto files2 = relative_files(run2);
  out.require(files1 == files2, "runs produced different file sets");
  out.require(files1.size() >= cli_suite().size(), "suite produced too few files");
  if (files1 == files2)
    for (const fs::path& rel : files1)
      out.require(slurp(run1 / rel) == slurp(run2 / rel),
                  "bytes differ for " + rel.string());
  double elapsed = ms_since(t0);
  out.require(elapsed < budget_ms,
              "two full CLI runs took " + std::to_string(elapsed) + " ms");
  fs::remove_all(base);
  return out;
}

int emit(int index, const std::string& name, const Outcome& out, double ms) {
  std::printf("%s  %d  %-34s %8.1f ms%s%s\n", out.pass ? "PASS" : "FAIL", index,
              name.c_str(), ms, out.pass ? "" : "  -- ", out.detail.c_str());
  return out.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  int failures = 0;
  auto run = [&failures](int index, const std::string& name, auto&& fn) {
    auto t0 = Clock::now();
    Outcome out = fn();
    failures += emit(index, name, out, ms_since(t0));
  };

  run(1, "structure suite (< 1 s)", [] { return criterion_structure(1000.0); });
  run(2, "restriction vs oracle sweep (< 5 s)",
      [] { return criterion_branching_rules(5000.0); });
  run(3, "sp cone decomposition, box 60 (< 5 s)",
      [] { return criterion_sp_decomposition(5000.0); });
  run(4, "gl ray decomposition, box 60 (< 5 s)",
      [] { return criterion_gl_decomposition(5000.0); });
  run(5, "admissibility dichotomy", [] { return criterion_admissibility(); });
  run(6, "reducible member and factors", [] { return criterion_reducible_family(); });
  run(7, "pseudo-dual grid, box 20", [] { return criterion_grid(); });
  run(8, "multiplicity one in all certificates",
      [] { return criterion_multiplicity_one(); });
  run(9, "byte-identical CLI artifacts (< 30 s)",
      [&cli] { return criterion_determinism(cli, 30000.0); });

  return failures == 0 ? 0 : 1;
}
