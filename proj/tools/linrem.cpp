// linrem: command-line front end. Exit codes: 0 ok, 1 a check failed, 2 bad input.
#include <CLI11.hpp>

#include <charconv>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "linrem/behrend.hpp"
#include "linrem/error.hpp"
#include "linrem/hrep.hpp"
#include "linrem/linsys.hpp"
#include "linrem/removal.hpp"
#include "linrem/solutions.hpp"
#include "linrem/verify.hpp"

using namespace linrem;

namespace {

struct Flags {
  std::string input;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  bool naive = false;
  std::optional<std::uint64_t> guard;
  std::string dump;
  std::string mode = "per-set-max";
  std::size_t trials = 10;
  std::uint64_t n = 16, m = 2;
  std::vector<std::uint64_t> X;
  std::vector<std::uint64_t> sphere;
};

Instance load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot read " + path);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_instance(text.str());
}

std::string one_based(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t x : v) out += (out.empty() ? "" : " ") + std::to_string(x + 1);
  return out;
}

std::string values(const std::vector<Residue>& v) {
  std::string out;
  for (Residue x : v) out += (out.empty() ? "" : ",") + std::to_string(x);
  return out.empty() ? "-" : out;
}

std::string shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

int cmd_normalize(const Flags& fl) {
  const Instance inst = load(fl.input);
  const NormalizedSystem ns = normalize(inst.system);
  std::cout << format_instance(ns.system, ns.to_normalized(inst.sets));
  std::cout << "# perm " << one_based(ns.perm) << "\n# m " << one_based(ns.m) << "\n";
  for (std::size_t i = 0; i < ns.ell(); ++i) {
    std::cout << "# W" << i + 1 << " " << one_based(ns.W[i]) << "\n";
  }
  std::cout << "# d " << one_based(ns.d) << "\n";
  for (std::size_t i = 0; i < ns.ell(); ++i) {
    std::cout << "# I" << i + 1 << " " << one_based(ns.I[i]) << "\n";
  }
  std::cout << "# r " << ns.r << "\n# k " << ns.k << "\n";
  return 0;
}

int cmd_count(const Flags& fl) {
  const Instance inst = load(fl.input);
  const std::uint64_t T = fl.naive ? count_solutions_naive(inst.system, inst.sets)
                                   : count_solutions(inst.system, inst.sets, fl.workers);
  std::cout << "T=" << T << "\n";
  return 0;
}

int cmd_represent(const Flags& fl) {
  const Instance inst = load(fl.input);
  const NormalizedSystem ns = normalize(inst.system);
  const CoefficientTables coeffs = build_coefficients(ns);
  const Template tmpl = build_template(ns);
  const Host host = build_host(ns, coeffs, inst.sets, tmpl, fl.workers);
  std::cout << "r=" << ns.r << " k=" << ns.k << " edges=" << host.edge_count() << "\n";
  for (const auto& e : tmpl.edges) {
    std::cout << "TEMPLATE " << e.color + 1;
    for (std::size_t part : e.parts) std::cout << " " << tmpl.part_name(part);
    std::cout << "\n";
  }
  if (!fl.dump.empty()) {
    const std::string text = host.dump(tmpl);
    if (fl.dump == "-") {
      std::cout << text;
    } else {
      std::ofstream out(fl.dump, std::ios::binary);
      if (!(out << text)) throw Error(ErrorKind::InvalidArgument, "cannot write " + fl.dump);
    }
  }
  return 0;
}

int cmd_verify(const Flags& fl) {
  const Instance inst = load(fl.input);
  const NormalizedSystem ns = normalize(inst.system);
  const CoefficientTables coeffs = build_coefficients(ns);
  VerificationOptions opt;
  opt.mode = fl.naive ? CopyMode::Naive : CopyMode::PerPart;
  opt.workers = fl.workers;
  opt.guard = fl.guard.value_or(kNaiveGuard);
  const VerificationReport report = check_representation(ns, coeffs, inst.sets, opt);
  std::cout << report.to_text();
  return report.all_pass() ? 0 : 1;
}

int cmd_removal(const Flags& fl) {
  const Instance inst = load(fl.input);
  RemovalObjective objective;
  if (fl.mode == "per-set-max") {
    objective = RemovalObjective::PerSetMax;
  } else if (fl.mode == "total") {
    objective = RemovalObjective::Total;
  } else {
    throw Error(ErrorKind::InvalidArgument, "unknown mode " + fl.mode);
  }
  const RemovalResult r =
      removal_distance(inst.system, inst.sets, objective, fl.guard.value_or(kDefaultRemovalGuard));
  std::cout << "budget=" << r.budget << " total=" << r.total << "\n";
  for (std::size_t i = 0; i < r.removed.size(); ++i) std::cout << "S" << i + 1 << " " << values(r.removed[i]) << "\n";
  return 0;
}

int cmd_translate(const Flags& fl) {
  const Instance inst = load(fl.input);
  const NormalizedSystem ns = normalize(inst.system);
  const CoefficientTables coeffs = build_coefficients(ns);
  const Template tmpl = build_template(ns);
  const Host host = build_host(ns, coeffs, inst.sets, tmpl, fl.workers);
  std::vector<ColoredCopy> copies;
  for (const Solution& s : list_solutions(ns, inst.sets)) {
    for (auto& c : copies_for_solution(host, tmpl, ns, coeffs, ns.to_normalized(s))) copies.push_back(std::move(c));
  }
  const std::vector<EdgeId> E = min_copy_hitting_set(copies, fl.guard.value_or(kDefaultCopyGuard));
  const Translation t = translate_edge_deletion(host, ns, E, inst.sets);
  const std::uint64_t cap = ns.p() * E.size() / t.threshold_numerator;
  bool within = true;
  for (const auto& r : t.removed) within = within && r.size() <= cap;
  const bool free = is_free(inst.system, t.sets);
  std::cout << "copies=" << copies.size() << " E=" << E.size() << " threshold=" << t.threshold_numerator << "/"
            << ns.p() << " cap=" << cap << "\n";
  for (std::size_t i = 0; i < t.removed.size(); ++i) std::cout << "S" << i + 1 << " " << values(t.removed[i]) << "\n";
  std::cout << "free=" << (free ? "yes" : "no") << " within_cap=" << (within ? "yes" : "no") << "\n";
  return free && within ? 0 : 1;
}

int cmd_epsdelta(const Flags& fl) {
  const Instance inst = load(fl.input);
  const std::size_t guard = fl.guard.value_or(kDefaultRemovalGuard);
  const std::size_t per_set = std::max<std::size_t>(1, guard / inst.system.p());
  const auto gen = random_subfamily_generator(inst.system.field().q(), inst.system.p(), 1, 2, per_set);
  for (const auto& rec : epsdelta_scan(inst.system, gen, fl.trials, fl.seed, guard)) std::cout << to_csv(rec) << "\n";
  return 0;
}

int cmd_behrend(const Flags& fl) {
  std::vector<std::uint64_t> X = fl.X;
  if (!fl.sphere.empty()) {
    if (fl.sphere.size() != 2) throw Error(ErrorKind::InvalidArgument, "--sphere takes base,dim");
    for (std::uint64_t v : behrend_sphere(fl.sphere[0], fl.sphere[1])) {
      if (v > fl.m) throw Error(ErrorKind::InvalidArgument, "sphere element " + std::to_string(v) + " exceeds m");
      X.push_back(v);
    }
  } else if (X.empty()) {
    X = max_ap3_free(fl.m);
  }
  const LowerBoundInstance inst = build_lower_bound_instance(fl.n, fl.m, X);
  const double size = static_cast<double>(inst.S.size());
  const double bound = size * size * size / static_cast<double>(inst.m * inst.m);
  std::cout << inst.n << " " << inst.m << " " << inst.X.size() << " " << inst.S.size() << " " << inst.ap3.total << " "
            << inst.ap3.nontrivial << " " << shortest(bound) << "\n";
  return inst.no_carry ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hypergraph representations of linear systems over prime fields"};
  app.require_subcommand(1);
  Flags fl;

  auto with_input = [&](CLI::App* sub) {
    sub->add_option("file", fl.input, "system file")->required();
    sub->add_option("--workers", fl.workers, "worker threads")->check(CLI::PositiveNumber);
    return sub;
  };
  auto* normalize_cmd = with_input(app.add_subcommand("normalize", "print the canonical form"));
  auto* count_cmd = with_input(app.add_subcommand("count", "count solutions"));
  count_cmd->add_flag("--naive", fl.naive, "walk the full product of the sets");
  auto* represent_cmd = with_input(app.add_subcommand("represent", "build template and host"));
  represent_cmd->add_option("--dump", fl.dump, "write the host edge list (- for stdout)");
  auto* verify_cmd = with_input(app.add_subcommand("verify", "check the hypergraph representation"));
  verify_cmd->add_flag("--naive", fl.naive, "enumerate copies without using parts");
  verify_cmd->add_option("--guard", fl.guard, "limit on n^k and n^r for exhaustive checks");
  auto* removal_cmd = with_input(app.add_subcommand("removal", "exact removal distance"));
  removal_cmd->add_option("--mode", fl.mode, "per-set-max or total")->check(CLI::IsMember({"per-set-max", "total"}));
  removal_cmd->add_option("--guard", fl.guard, "limit on the total set size");
  auto* translate_cmd = with_input(app.add_subcommand("translate", "hit all copies, then remove elements"));
  translate_cmd->add_option("--guard", fl.guard, "limit on the number of copies");
  auto* epsdelta_cmd = with_input(app.add_subcommand("epsdelta", "CSV of n,eps,delta over random subfamilies"));
  epsdelta_cmd->add_option("--trials", fl.trials, "number of families");
  epsdelta_cmd->add_option("--seed", fl.seed, "generator seed");
  epsdelta_cmd->add_option("--guard", fl.guard, "limit on the total set size");
  auto* behrend_cmd = app.add_subcommand("behrend", "3-AP lower-bound instance");
  behrend_cmd->add_option("--n", fl.n, "ambient size");
  behrend_cmd->add_option("--m", fl.m, "digit half-width");
  behrend_cmd->add_option("--X", fl.X, "3-AP-free subset of [1, m]")->delimiter(',');
  behrend_cmd->add_option("--sphere", fl.sphere, "base,dim for the digit-sphere set")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (*normalize_cmd) return cmd_normalize(fl);
    if (*count_cmd) return cmd_count(fl);
    if (*represent_cmd) return cmd_represent(fl);
    if (*verify_cmd) return cmd_verify(fl);
    if (*removal_cmd) return cmd_removal(fl);
    if (*translate_cmd) return cmd_translate(fl);
    if (*epsdelta_cmd) return cmd_epsdelta(fl);
    if (*behrend_cmd) return cmd_behrend(fl);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    switch (e.kind()) {
      case ErrorKind::MissingEdge:
      case ErrorKind::SimplicityViolation:
      case ErrorKind::InvariantViolation: return 1;
      default: return 2;
    }
  }
  return 2;
}
