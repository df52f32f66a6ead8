// Command-line front end: compute type tables, restrictions and
// decompositions, run the structural verifications, and emit lattice
// figures.  Exit status 0 on success, 1 when a verification fails, 2 on
// usage errors.  All output is deterministic: sorted tables, sorted JSON
// keys, no timestamps.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sl4branch/render.hpp"
#include "sl4branch/serialize.hpp"
#include "sl4branch/structure.hpp"

using namespace sl4branch;

namespace {

int write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return 0;
  }
  std::ofstream os(out_path, std::ios::binary);
  if (!os) {
    std::cerr << "error: cannot open output file '" << out_path << "'\n";
    return 2;
  }
  os << text;
  return os ? 0 : 2;
}

struct SubgroupChoice {
  std::string name;   // sp, gl, sp2, gl2
  U2Variant variant;  // the compact subgroup the types live on
};

SubgroupChoice parse_subgroup(const std::string& s) {
  if (s == "sp" || s == "gl") return {s, U2Variant::V1};
  if (s == "sp2" || s == "gl2") return {s, U2Variant::V2};
  throw std::invalid_argument("unknown subgroup '" + s + "' (want sp, gl, sp2, gl2)");
}

U2Variant parse_variant(const std::string& s) {
  if (s == "V1") return U2Variant::V1;
  if (s == "V2") return U2Variant::V2;
  throw std::invalid_argument("unknown variant '" + s + "' (want V1 or V2)");
}

/// Resolve the mutually exclusive --subgroup/--variant pair.
std::pair<std::string, U2Variant> resolve_target(const std::string& subgroup,
                                                 const std::string& variant) {
  if (!subgroup.empty() && !variant.empty())
    throw std::invalid_argument("give either --subgroup or --variant, not both");
  if (!subgroup.empty()) {
    SubgroupChoice c = parse_subgroup(subgroup);
    return {c.name, c.variant};
  }
  if (!variant.empty()) return {"", parse_variant(variant)};
  throw std::invalid_argument("one of --subgroup or --variant is required");
}

std::string tsv_weight_table(const MultTable<Weight>& t) {
  std::ostringstream os;
  for (const auto& [w, m] : t.entries())
    os << w.x << '\t' << w.y << '\t' << m << '\n';
  return os.str();
}

std::string tsv_restriction(const RestrictionResult& res) {
  std::ostringstream os;
  for (const auto& [k, m] : res.table.entries())
    os << k.hw.x << '\t' << k.hw.y << '\t' << m << '\n';
  for (const InfiniteKey& k : res.infinite)
    os << k.key.hw.x << '\t' << k.key.hw.y << "\tinf\n";
  return os.str();
}

std::string tsv_certificate(const DecompositionCertificate& cert) {
  std::ostringstream os;
  for (const auto& [s, m] : cert.summands) {
    Weight w = s.minimal_type().hw;
    os << s.text() << '\t' << w.x << '\t' << w.y << '\t' << m << '\n';
  }
  os << "exact\t" << (cert.exact ? "true" : "false") << '\n';
  return os.str();
}

std::string tsv_report(const VerificationReport& rep) {
  std::ostringstream os;
  for (const ClauseResult& c : rep.clauses)
    os << (c.pass ? "pass" : "FAIL") << '\t' << c.name << '\t' << c.expected << '\t'
       << c.actual << '\n';
  os << (rep.pass() ? "pass" : "FAIL") << "\tall\t\t\n";
  return os.str();
}

/// The K-type table of a module, whichever side of the restriction it
/// lives on: SO(4) types for aq/aqprime/ladder, V1 types for sp/glray.
MultTable<Weight> module_type_table(const ModuleDescriptor& d, long long max_norm) {
  if (d.has_so4_ktypes()) return ktypes(d, max_norm);
  return hw_projection(h_summand_table(d, max_norm));
}

struct CommonOpts {
  std::string module = "aq:0";
  std::string subgroup;
  std::string variant;
  std::string format = "tsv";
  std::string out;
  long long max_norm = 12;
};

int run_ktypes(const CommonOpts& o) {
  ModuleDescriptor d = ModuleDescriptor::parse(o.module);
  MultTable<Weight> t = module_type_table(d, o.max_norm);
  if (o.format == "json")
    return write_output(dump_json(table_json(d.text(), "", "", o.max_norm, t)), o.out);
  return write_output(tsv_weight_table(t), o.out);
}

int run_restrict(const CommonOpts& o) {
  ModuleDescriptor d = ModuleDescriptor::parse(o.module);
  auto [name, variant] = resolve_target(o.subgroup, o.variant);
  RestrictionResult res = restrict_module(d, variant, o.max_norm);
  if (o.format == "json")
    return write_output(dump_json(restriction_json(d.text(), name, variant,
                                                   o.max_norm, res)),
                        o.out);
  return write_output(tsv_restriction(res), o.out);
}

int run_decompose(const CommonOpts& o) {
  ModuleDescriptor d = ModuleDescriptor::parse(o.module);
  SubgroupChoice c = parse_subgroup(o.subgroup.empty() ? "sp" : o.subgroup);
  if (c.variant != U2Variant::V1)
    throw std::invalid_argument(
        "decompose: only the admissible side (sp or gl) has a discrete decomposition");
  RestrictionResult res = restrict_module(d, U2Variant::V1, o.max_norm);
  if (!res.all_finite()) {
    std::cerr << "error: restriction has infinite multiplicities (first at "
              << res.infinite.front().key.hw.str() << "); nothing to decompose\n";
    return 1;
  }
  PeelFamily fam = c.name == "sp" ? PeelFamily::SpCones : PeelFamily::GlRays;
  DecompositionCertificate cert = decompose(res.table, fam, o.max_norm);
  if (o.format == "json") {
    json out = table_json(d.text(), c.name, "V1", o.max_norm, res.table);
    out["certificate"] = certificate_json(cert);
    return write_output(dump_json(out), o.out);
  }
  return write_output(tsv_certificate(cert), o.out);
}

int run_admissible(const CommonOpts& o) {
  ModuleDescriptor d = ModuleDescriptor::parse(o.module);
  auto [name, variant] = resolve_target(o.subgroup, o.variant);
  AdmissibilityVerdict v = admissibility(d, variant);
  if (o.format == "json")
    return write_output(dump_json(admissibility_json(d.text(), name, variant, v)),
                        o.out);
  std::ostringstream os;
  if (v.admissible)
    os << "admissible\n";
  else
    os << "not-admissible\t" << v.witness->hw.x << '\t' << v.witness->hw.y << '\t'
       << v.direction << '\n';
  return write_output(os.str(), o.out);
}

int emit_report(const VerificationReport& rep, const CommonOpts& o) {
  int rc = o.format == "json" ? write_output(dump_json(report_json(rep)), o.out)
                              : write_output(tsv_report(rep), o.out);
  if (rc != 0) return rc;
  return rep.pass() ? 0 : 1;
}

int run_verify(const std::string& target, const CommonOpts& o) {
  if (target == "structure") {
    VerificationReport rep = structure_report();
    VerificationReport dual = pseudo_dual_report();
    rep.clauses.insert(rep.clauses.end(), dual.clauses.begin(), dual.clauses.end());
    return emit_report(rep, o);
  }
  if (target == "branching") {
    ModuleDescriptor d = ModuleDescriptor::parse(o.module);
    SubgroupChoice c = parse_subgroup(o.subgroup.empty() ? "sp" : o.subgroup);
    if (c.variant != U2Variant::V1)
      throw std::invalid_argument(
          "verify branching: only the admissible side (sp or gl) decomposes");
    Subgroup sg = c.name == "sp" ? Subgroup::H1 : Subgroup::H1p;
    BranchingReport rep = verify_branching(d, sg, o.max_norm);
    if (o.format == "json") {
      json out = report_json(rep.report);
      out["certificate"] = certificate_json(rep.certificate);
      int rc = write_output(dump_json(out), o.out);
      if (rc != 0) return rc;
      return rep.report.pass() ? 0 : 1;
    }
    return emit_report(rep.report, o);
  }
  if (target == "grid") {
    GridReport grid = pseudo_dual_grid(o.max_norm);
    if (o.format == "json") {
      int rc = write_output(dump_json(grid_json(grid)), o.out);
      if (rc != 0) return rc;
      return grid.report.pass() ? 0 : 1;
    }
    return emit_report(grid.report, o);
  }
  throw std::invalid_argument("unknown verify target '" + target +
                              "' (want structure, branching, grid)");
}

int run_grid(const CommonOpts& o) {
  GridReport grid = pseudo_dual_grid(o.max_norm);
  if (o.format == "json") return write_output(dump_json(grid_json(grid)), o.out);
  std::ostringstream os;
  for (const auto& [key, id] : grid.diagonal_to_cone)
    os << key.hw.x << '\t' << key.hw.y << '\t' << id.text() << '\n';
  for (const auto& [key, id] : grid.cone_key_to_ray)
    os << key.hw.x << '\t' << key.hw.y << '\t' << id.text() << '\n';
  int rc = write_output(os.str(), o.out);
  if (rc != 0) return rc;
  return grid.report.pass() ? 0 : 1;
}

int run_figures(const std::string& outdir, long long max_norm) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(outdir, ec);
  if (ec) {
    std::cerr << "error: cannot create directory '" << outdir << "': "
              << ec.message() << "\n";
    return 2;
  }
  for (const Figure& fig : lattice_figures(max_norm)) {
    for (const auto& [ext, body] :
         {std::pair<std::string, const std::string*>{"txt", &fig.txt},
          {"svg", &fig.svg}}) {
      fs::path p = fs::path(outdir) / (fig.name + "." + ext);
      std::ofstream os(p, std::ios::binary);
      if (!os || !(os << *body)) {
        std::cerr << "error: cannot write '" << p.string() << "'\n";
        return 2;
      }
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact branching tables and certificates for the derived-functor "
               "modules of SL(4,R) restricted to Sp(2,R) and GL(2,C)"};
  app.require_subcommand(1);

  CommonOpts kt, rs, dc, ad, vf, gr;
  std::string verify_target;
  std::string fig_out;
  long long fig_max = 11;

  auto add_common = [](CLI::App* cmd, CommonOpts& o, bool with_target) {
    cmd->add_option("--module", o.module, "module descriptor (aq:<m>, aqprime:<m>, ladder, sp:<n>, glray:<x>,<y>)");
    if (with_target) {
      cmd->add_option("--subgroup", o.subgroup, "subgroup: sp, gl, sp2, gl2");
      cmd->add_option("--variant", o.variant, "compact subgroup variant: V1 or V2");
    }
    cmd->add_option("--max", o.max_norm, "box bound on type norms");
    cmd->add_option("--format", o.format, "output format: tsv or json")
        ->check(CLI::IsMember({"tsv", "json"}));
    cmd->add_option("--out", o.out, "output file (default stdout)");
  };

  CLI::App* c_ktypes = app.add_subcommand("ktypes", "type table of a module");
  add_common(c_ktypes, kt, false);

  CLI::App* c_restrict =
      app.add_subcommand("restrict", "restrict a module to a U(2) subgroup");
  add_common(c_restrict, rs, true);

  CLI::App* c_decompose = app.add_subcommand(
      "decompose", "peel a restriction into summands with a certificate");
  add_common(c_decompose, dc, true);
  dc.max_norm = 40;

  CLI::App* c_admissible = app.add_subcommand(
      "admissible", "decide finite multiplicities for a restriction");
  add_common(c_admissible, ad, true);

  CLI::App* c_verify =
      app.add_subcommand("verify", "run a verification suite (exit 1 on failure)");
  c_verify->add_option("target", verify_target, "structure, branching or grid")
      ->required();
  add_common(c_verify, vf, true);
  vf.max_norm = 40;
  vf.format = "json";

  CLI::App* c_grid = app.add_subcommand(
      "grid", "the two enumerations tying the sp and gl decompositions together");
  add_common(c_grid, gr, false);
  gr.max_norm = 12;
  gr.format = "json";

  CLI::App* c_figures = app.add_subcommand("figures", "write lattice figures");
  c_figures->add_option("--out", fig_out, "output directory")->required();
  c_figures->add_option("--max", fig_max, "box bound on type norms");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (c_ktypes->parsed()) return run_ktypes(kt);
    if (c_restrict->parsed()) return run_restrict(rs);
    if (c_decompose->parsed()) return run_decompose(dc);
    if (c_admissible->parsed()) return run_admissible(ad);
    if (c_verify->parsed()) return run_verify(verify_target, vf);
    if (c_grid->parsed()) return run_grid(gr);
    if (c_figures->parsed()) return run_figures(fig_out, fig_max);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
