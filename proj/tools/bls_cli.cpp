// bls: command-line front end.
//
//   bls solve FILE [--mode M] [--budget N] [--field F]
//   bls analyze FILE
//   bls pencil FILE
//   bls oracle FILE [--format text|json]
//   bls gen-commuting --P "10;01" --Q "01;10"
//   bls gen-quaternion 0 0 0 1
//
// Exit codes: 0 solutions, 1 no solution, 2 undecided, 3 error.

#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bls/bls.hpp"

namespace {

constexpr int kSolutions = 0;
constexpr int kNoSolution = 1;
constexpr int kUndecided = 2;
constexpr int kError = 3;

struct Common {
  std::string path;
  std::string mode;
  std::string field;
  std::uint64_t budget = 0;
};

std::uint64_t default_budget() {
  if (const char* env = std::getenv("BLS_BUDGET"); env && bls::detail::all_digits(env)) {
    return std::stoull(env);
  }
  return 10'000'000;
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path);
  if (!in) throw bls::Error(bls::Errc::ParseError, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bls::SystemFile load(const Common& c) {
  std::optional<bls::FieldSpec> override;
  if (!c.field.empty()) override = bls::parse_field(c.field);
  return bls::parse_system_file(read_input(c.path), override);
}

bls::SolutionMode mode_of(const Common& c, const bls::SystemFile& file) {
  if (!c.mode.empty()) return bls::parse_mode(c.mode);
  return file.mode.value_or(bls::SolutionMode::Any);
}

int exit_code(bls::OutcomeStatus s) {
  switch (s) {
    case bls::OutcomeStatus::Solutions: return kSolutions;
    case bls::OutcomeStatus::NoSolution: return kNoSolution;
    case bls::OutcomeStatus::Undecided: return kUndecided;
  }
  return kError;
}

int run_solve(const Common& c) {
  const auto file = load(c);
  bls::SolveOptions opts;
  opts.mode = mode_of(c, file);
  opts.budget = c.budget;
  const auto out = bls::solve(file.system, opts);
  std::cout << bls::format_outcome(out);
  return exit_code(out.status);
}

std::string bound_status(const bls::BilinearSystem& s) {
  const std::size_t m = s.m();
  const std::size_t pq1 = s.p() + s.q() - 1;
  if (m > pq1) return "m = " + std::to_string(m) + " > p+q-1 = " + std::to_string(pq1) + " (cannot be always solvable)";
  if (m == pq1) return "m = " + std::to_string(m) + " = p+q-1 (at the bound)";
  return "m = " + std::to_string(m) + " < p+q-1 = " + std::to_string(pq1) + " (within the bound)";
}

int run_analyze(const Common& c) {
  const auto file = load(c);
  const auto& sys = file.system;
  std::cout << "system: p=" << sys.p() << " q=" << sys.q() << " m=" << sys.m() << " field " << sys.field() << "\n";
  const auto rep = bls::reduce_system(sys);
  if (rep.inconsistent) {
    std::cout << "reduction: inconsistent (pair " << *rep.conflicting_pair + 1 << " reduces to 0 = "
              << *rep.conflicting_rhs << ")\n";
  } else {
    std::cout << "reduction: consistent, kept " << rep.kept.size() << " of " << sys.m() << " pairs\n";
  }
  for (const auto& op : rep.ops) std::cout << "  " << op.to_string() << "\n";
  if (rep.inconsistent) return kNoSolution;

  const auto& red = rep.reduced;
  std::cout << "pencil: r = " << bls::build_pencil(red).r() << "\n";
  const auto support = bls::collective_support(red);
  std::cout << "support:\n";
  std::istringstream rows(support.to_string());
  for (std::string line; std::getline(rows, line);) std::cout << "  " << line << "\n";
  std::cout << "3-corner: " << (bls::has_three_corner_property(support) ? "yes" : "no") << "\n";
  std::cout << "always solvable: " << bls::certify_always_solvable(red).to_string() << "\n";
  std::cout << "bound: " << bound_status(red) << "\n";
  return kSolutions;
}

int run_pencil(const Common& c) {
  const auto file = load(c);
  const auto rep = bls::reduce_system(file.system);
  if (rep.inconsistent) {
    std::cout << "inconsistent: pair " << *rep.conflicting_pair + 1 << " reduces to 0 = " << *rep.conflicting_rhs
              << "\n";
    return kNoSolution;
  }
  std::cout << bls::format_pencil(bls::build_pencil(rep.reduced));
  return kSolutions;
}

int run_oracle(const Common& c, const std::string& format) {
  const auto file = load(c);
  const auto& sys = file.system;
  const auto mode = mode_of(c, file);
  const auto sols = bls::brute_force_solve(sys, mode, c.budget);
  const auto img = bls::image_cardinality(sys, c.budget);
  std::optional<bls::AlwaysSolvableReport> as;
  try {
    as = bls::always_solvable_exhaustive(sys, c.budget);
  } catch (const bls::Error& e) {
    if (e.code() != bls::Errc::BudgetExceeded) throw;
  }

  if (format == "json") {
    nlohmann::json j;
    j["field"] = sys.field().to_string();
    j["mode"] = bls::to_string(mode);
    j["classes"] = sols.size();
    j["solutions"] = nlohmann::json::array();
    for (const auto& s : sols) j["solutions"].push_back(bls::format_solution(s));
    j["image"] = {{"attained", img.attained}, {"total", img.total}};
    if (img.bound_applies()) j["image"]["bound"] = img.bound;
    if (as) {
      j["always_solvable"] = as->always_solvable;
      if (as->witness) j["unattained"] = bls::to_string(*as->witness);
    }
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "field " << sys.field() << "  mode " << bls::to_string(mode) << "\n";
    std::cout << "classes: " << sols.size() << "\n";
    for (const auto& s : sols) std::cout << "  " << bls::format_solution(s) << "\n";
    std::cout << "image: " << img.attained << " of " << img.total << "\n";
    if (img.bound_applies()) {
      std::cout << "bound: " << img.bound << (img.inequality_holds() ? " (holds)" : " (VIOLATED)") << "\n";
    }
    if (as) {
      std::cout << "always solvable: " << (as->always_solvable ? "yes" : "no");
      if (as->witness) std::cout << " (first unattained g = " << bls::to_string(*as->witness) << ")";
      std::cout << "\n";
    }
  }
  return sols.empty() ? kNoSolution : kSolutions;
}

int run_gen_commuting(const std::string& P, const std::string& Q, const std::string& field) {
  const bls::FieldSpec f = field.empty() ? bls::FieldSpec::rationals() : bls::parse_field(field);
  const auto cs = bls::commuting_bls(bls::SignPattern::parse(P), bls::SignPattern::parse(Q), f);
  std::cout << "# PQ = QP with P = " << P << ", Q = " << Q << "\n";
  for (std::size_t k = 0; k < cs.y_positions.size(); ++k) {
    std::cout << "# y" << k + 1 << " = P(" << cs.y_positions[k].first + 1 << "," << cs.y_positions[k].second + 1
              << ")\n";
  }
  for (std::size_t k = 0; k < cs.x_positions.size(); ++k) {
    std::cout << "# x" << k + 1 << " = Q(" << cs.x_positions[k].first + 1 << "," << cs.x_positions[k].second + 1
              << ")\n";
  }
  std::cout << bls::emit_system_file({cs.system, bls::SolutionMode::TotallyNonzero});
  return kSolutions;
}

int run_gen_quaternion(const std::vector<std::string>& d0, const std::string& field) {
  const bls::FieldSpec f = field.empty() ? bls::FieldSpec::rationals() : bls::parse_field(field);
  bls::Vector d;
  for (const auto& t : d0) d.push_back(bls::parse_scalar(t, f));
  std::cout << "# v . w = d0_1, v x w = (d0_2, d0_3, d0_4); y = v, x = w\n";
  std::cout << "# (v x w)_1 = v_2 w_3 - v_3 w_2, cyclic\n";
  std::cout << bls::emit_system_file({bls::quaternion_bls(d), std::nullopt});
  return kSolutions;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact solver for bilinear systems y^T A_i x = g_i"};
  app.require_subcommand(1);

  Common c;
  c.budget = default_budget();
  auto add_common = [&](CLI::App* sub, bool with_mode) {
    sub->add_option("file", c.path, "system file, or - for stdin")->required();
    sub->add_option("--field", c.field, "reinterpret entries over Q, Q(i) or GF(p)");
    sub->add_option("--budget", c.budget, "enumeration budget (default $BLS_BUDGET or 1e7)");
    if (with_mode) sub->add_option("--mode", c.mode, "any | nontrivial | totally_nonzero");
  };

  auto* solve = app.add_subcommand("solve", "decide solvability and print canonical solutions");
  add_common(solve, true);
  auto* analyze = app.add_subcommand("analyze", "reduction, support pattern and always-solvable certificate");
  add_common(analyze, false);
  auto* pencil = app.add_subcommand("pencil", "print K0 and K1..Kr of the solution pencil");
  add_common(pencil, false);
  auto* oracle = app.add_subcommand("oracle", "exhaustive enumeration over GF(p)");
  add_common(oracle, true);
  std::string format = "text";
  oracle->add_option("--format", format, "text | json")->check(CLI::IsMember({"text", "json"}));

  auto* gen_c = app.add_subcommand("gen-commuting", "system for PQ = QP with given zero-nonzero patterns");
  std::string pat_p, pat_q, gen_field;
  gen_c->add_option("--P", pat_p, "pattern rows separated by ';', e.g. 10;01")->required();
  gen_c->add_option("--Q", pat_q, "pattern rows separated by ';'")->required();
  gen_c->add_option("--field", gen_field);

  auto* gen_q = app.add_subcommand(
      "gen-quaternion", "system for (v . w, v x w) = d0 with the right-handed cross product");
  std::vector<std::string> d0;
  gen_q->add_option("d0", d0, "four scalars")->required()->expected(4);
  gen_q->add_option("--field", gen_field);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kError;
  }

  try {
    if (*solve) return run_solve(c);
    if (*analyze) return run_analyze(c);
    if (*pencil) return run_pencil(c);
    if (*oracle) return run_oracle(c, format);
    if (*gen_c) return run_gen_commuting(pat_p, pat_q, gen_field);
    if (*gen_q) return run_gen_quaternion(d0, gen_field);
  } catch (const bls::Error& e) {
    if (e.code() == bls::Errc::BudgetExceeded) {
      std::cout << "status: Undecided\n  note: " << e.what() << "\n";
      return kUndecided;
    }
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
