#include "sps/cli.hpp"

#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "sps/apps.hpp"
#include "sps/groebner.hpp"
#include "sps/presets.hpp"
#include "sps/textio.hpp"

namespace sps {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

PresPtr ring_from_file(const std::string& path) { return load_ring(slurp(path)); }

std::string cert_text(const Certificate& c) {
  switch (c.kind) {
    case CertKind::exact: return "exact";
    case CertKind::stabilized: return "stabilized(" + std::to_string(c.cap) + ")";
    case CertKind::failed: return "failed(" + std::to_string(c.cap) + ")";
  }
  return "?";
}

struct Ctx {
  std::string ring_file;
  std::string in_file;
  std::vector<std::string> elems;
  std::vector<std::string> ideal;
  std::vector<std::string> j_gens;
  std::vector<std::string> g_gens;
  unsigned budget = 64;
  unsigned samples = 20;
  unsigned degree = 4;
  std::uint64_t seed = 12345;
  unsigned max_cap = 0;
};

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  CommandResult res;
  std::ostringstream out;
  CLI::App app{"computer algebra for iterated local skew power series rings"};
  app.require_subcommand(1);
  Ctx ctx;

  auto add_common = [&](CLI::App* cmd, bool need_elems, int nelems) {
    cmd->add_option("--ring", ctx.ring_file, "ring description file")->required();
    cmd->add_option("--max-cap", ctx.max_cap, "working-cap ceiling for lex stabilization");
    if (need_elems) {
      auto* opt = cmd->add_option("elements", ctx.elems, "element expressions");
      if (nelems > 0) opt->expected(nelems);
      cmd->add_option("--in", ctx.in_file, "read the main element from a file");
    }
    return cmd;
  };

  auto* c_validate = add_common(app.add_subcommand("validate", "validate a ring file"), false, 0);
  auto* c_normalize =
      add_common(app.add_subcommand("normalize", "standard form of an element"), true, -1);
  auto* c_add = add_common(app.add_subcommand("add", "sum of two elements"), true, 2);
  auto* c_mul = add_common(app.add_subcommand("mul", "product of two elements"), true, 2);
  auto* c_spair = add_common(app.add_subcommand("spair", "S-element of two elements"), true, 2);
  auto* c_weier =
      add_common(app.add_subcommand("weierstrass", "Weierstrass preparation f = u F"), true, -1);
  auto* c_divide = add_common(app.add_subcommand("divide", "multivariate right-division"), true, -1);
  c_divide->add_option("--by", ctx.ideal, "divisor (repeatable, ordered)")
      ->allow_extra_args(false)
      ->required();
  auto* c_groebner =
      add_common(app.add_subcommand("groebner", "Buchberger completion"), true, -1);
  auto* c_member = add_common(app.add_subcommand("member", "truncated ideal membership"), true, -1);
  c_member->add_option("--ideal", ctx.ideal, "ideal generator (repeatable)")
      ->allow_extra_args(false)
      ->required();
  auto* c_demo = add_common(app.add_subcommand("prime-demo", "height-1 prime reduction trace"),
                            true, -1);
  c_demo->add_option("--budget", ctx.budget, "step budget");
  auto* c_ladder = add_common(
      app.add_subcommand("ladder", "truncated-basis ladder with two-sidedness checks"), false, 0);
  auto* c_witness =
      add_common(app.add_subcommand("witness", "polynormality witness verification"), false, 0);
  for (CLI::App* cmd : {c_ladder, c_witness}) {
    cmd->add_option("--j", ctx.j_gens, "generator of the Groebner basis of J (repeatable)")
        ->allow_extra_args(false);
    cmd->add_option("--g", ctx.g_gens, "extension element, decreasing LM (repeatable)")
        ->allow_extra_args(false)
        ->required();
    cmd->add_option("--samples", ctx.samples, "number of random panel elements");
    cmd->add_option("--degree", ctx.degree, "monomial panel degree bound");
    cmd->add_option("--seed", ctx.seed, "panel seed");
  }

  std::vector<const char*> argv;
  argv.push_back("spscalc");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    try {
      app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      res.status = 0;
      res.output = out.str();
      return res;
    } catch (const CLI::ParseError& e) {
      res.status = 2;
      res.output = std::string(e.what()) + "\n";
      return res;
    }

    PresPtr ring;
    if (app.got_subcommand(c_validate)) {
      RingSpec spec = parse_ring_spec(slurp(ctx.ring_file));
      ValidationReport rep = RingPresentation::validate(spec);
      if (rep.ok()) {
        out << "ok\n";
      } else {
        out << "validation failed:\n" << rep.to_string();
        res.status = 2;
      }
      res.output = out.str();
      return res;
    }

    ring = ring_from_file(ctx.ring_file);
    auto elem = [&](std::size_t i) {
      if (!ctx.in_file.empty() && i == 0) return parse_element(ring, slurp(ctx.in_file), true);
      if (i >= ctx.elems.size()) throw error("missing element argument");
      return parse_element(ring, ctx.elems[i], true);
    };
    auto parse_list = [&](const std::vector<std::string>& xs) {
      std::vector<Element> v;
      v.reserve(xs.size());
      for (const auto& s : xs) v.push_back(parse_element(ring, s, true));
      return v;
    };

    if (app.got_subcommand(c_normalize)) {
      out << print_canonical(elem(0)) << "\n";
    } else if (app.got_subcommand(c_add)) {
      out << print_canonical(add(elem(0), elem(1))) << "\n";
    } else if (app.got_subcommand(c_mul)) {
      out << print_canonical(mul(elem(0), elem(1))) << "\n";
    } else if (app.got_subcommand(c_spair)) {
      out << print_canonical(spair(elem(0), elem(1))) << "\n";
    } else if (app.got_subcommand(c_weier)) {
      WeierstrassResult w = weierstrass(elem(0), ctx.max_cap);
      out << "u = " << print_canonical(w.unit) << "\n";
      out << "F = " << print_canonical(w.prepared) << "\n";
      out << "certificate = " << cert_text(w.cert) << "\n";
      if (w.cert.kind == CertKind::failed) res.status = 1;
    } else if (app.got_subcommand(c_divide)) {
      DivisorTuple F = DivisorTuple::of(parse_list(ctx.ideal));
      DivisionResult d = right_divide(elem(0), F, ctx.max_cap);
      for (std::size_t i = 0; i < d.quotients.size(); ++i)
        out << "q" << (i + 1) << " = " << print_canonical(d.quotients[i]) << "\n";
      out << "r = " << print_canonical(d.remainder) << "\n";
      out << "certificate = " << cert_text(d.cert) << "\n";
      if (d.cert.kind == CertKind::failed) res.status = 1;
    } else if (app.got_subcommand(c_groebner)) {
      if (ctx.elems.empty()) throw error("groebner needs at least one generator");
      GroebnerBasis G = complete(parse_list(ctx.elems), ctx.max_cap);
      for (std::size_t i = 0; i < G.gens.size(); ++i)
        out << "g" << (i + 1) << " = " << print_canonical(G.gens[i]) << "\n";
      for (const auto& line : G.log) out << "# " << line << "\n";
    } else if (app.got_subcommand(c_member)) {
      GroebnerBasis G = complete(parse_list(ctx.ideal), ctx.max_cap);
      MemberResult m = member(elem(0), G, ctx.max_cap);
      if (m.yes) {
        out << "yes\n";
      } else {
        out << "no\nremainder = " << print_canonical(m.remainder) << "\n";
        res.status = 1;
      }
    } else if (app.got_subcommand(c_demo)) {
      DerivativeTrace tr = prime_height1_demo(elem(0), ctx.budget);
      out << tr.to_text();
      if (tr.terminal == TraceTerminal::budget_exhausted) res.status = 1;
    } else if (app.got_subcommand(c_ladder)) {
      TruncatedBasisLadder ladder = build_ladder(parse_list(ctx.j_gens), parse_list(ctx.g_gens));
      out << "levels = " << ladder.levels.size() << " (r = 0.." << ladder.g.size() << ")\n";
      out << "regions = " << (ladder.regions_ok() ? "ok" : "violated") << "\n";
      for (const auto& is : ladder.region_report) out << "  " << is.what << "\n";
      SamplePanel panel = sample_panel(ring, ctx.degree, ctx.samples, ctx.seed);
      bool all_ok = ladder.regions_ok();
      for (std::size_t r = 1; r <= ladder.g.size(); ++r) {
        TwoSidednessReport rep = two_sidedness_check(ladder, r, panel);
        out << "two-sided G_" << r << ": " << (rep.ok() ? "yes" : "NO") << " (" << rep.checked
            << " products checked)\n";
        for (const auto& f : rep.failures)
          out << "  gen " << (f.gen_index + 1) << " * sample " << (f.sample_index + 1)
              << " leaves remainder " << print_canonical(f.remainder) << "\n";
        all_ok = all_ok && rep.ok();
      }
      if (!all_ok) res.status = 1;
    } else if (app.got_subcommand(c_witness)) {
      TruncatedBasisLadder ladder = build_ladder(parse_list(ctx.j_gens), parse_list(ctx.g_gens));
      SamplePanel panel = sample_panel(ring, ctx.degree, ctx.samples, ctx.seed);
      WitnessReport rep = polynormal_witness(ladder, panel);
      out << "g1 = " << print_canonical(rep.g1) << "\n";
      out << "verified = " << (rep.ok() ? "yes" : "NO") << " (" << rep.checked << " samples)\n";
      for (const auto& f : rep.failures)
        out << "  sample " << (f.sample_index + 1) << " discrepancy "
            << print_canonical(f.discrepancy) << "\n";
      if (!rep.ok()) res.status = 1;
    }
  } catch (const validation_error& e) {
    out << e.what() << "\n";
    res.status = 2;
  } catch (const parse_error& e) {
    out << "parse error: " << e.what() << "\n";
    res.status = 2;
  } catch (const error& e) {
    out << "error: " << e.what() << "\n";
    res.status = 2;
  }
  res.output = out.str();
  return res;
}

}  // namespace sps
