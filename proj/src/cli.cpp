#include "hypersum/cli.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "hypersum/analysis.hpp"
#include "hypersum/fppoly.hpp"
#include "hypersum/instances.hpp"
#include "hypersum/io.hpp"
#include "hypersum/oracle.hpp"
#include "hypersum/sumprod.hpp"

namespace hypersum::cli {

namespace {

struct CapFlags {
  std::optional<int> oracle_n;
  std::optional<std::uint64_t> terms;
  std::optional<std::uint64_t> tuples;
  std::optional<int> dense_n;

  Limits resolve() const {
    Limits limits = Limits::from_environment();
    if (oracle_n) limits.oracle_max_vars = *oracle_n;
    if (terms) limits.max_decomposition_terms = *terms;
    if (tuples) limits.max_tuples = *tuples;
    if (dense_n) limits.max_dense_vars = *dense_n;
    return limits;
  }
};

const std::vector<FpPolynomial>& polynomials(const CircuitDocument& doc, const char* command) {
  const auto* polys = std::get_if<std::vector<FpPolynomial>>(&doc.combination.gates);
  if (polys == nullptr) throw InputError(std::string(command) + " needs an fp document");
  return *polys;
}

Rational fast_sumprod(const CircuitDocument& doc, int forced_m, const Limits& limits) {
  const LinComb& c = doc.combination;
  if (c.family() == Family::fp) return Rational(sumprod_fp(polynomials(doc, "sumprod"), c.n, limits, forced_m));
  return sumprod(c.gates, c.n, limits);
}

Integer fast_count_roots(const CircuitDocument& doc, int forced_m, const Limits& limits) {
  const auto& polys = polynomials(doc, "count-roots");
  if (polys.size() != 1) throw InputError("count-roots needs exactly one polynomial");
  return forced_m >= 0 ? count_roots(polys.front(), forced_m, limits) : count_roots(polys.front(), limits);
}

Integer fast_count_system(const CircuitDocument& doc, int forced_m, const Limits& limits) {
  const auto& polys = polynomials(doc, "count-system");
  if (polys.empty()) throw InputError("count-system needs at least one polynomial");
  SystemCounter counter(polys, limits, forced_m);
  return counter.count(doc.targets).count;
}

Rational oracle_unchecked_total(const LinComb& c, const Limits& limits) {
  c.validate();
  Rational total = 0;
  for (std::size_t i = 0; i < c.sparsity(); ++i) {
    if (c.coefficients[i] != 0) total += c.coefficients[i] * oracle_sumprod(select(c.gates, {i}), c.n, limits);
  }
  return total;
}

std::string boolean_line(bool boolean, const Rational& deviation) {
  return boolean ? "boolean" : "non-boolean deviation=" + format_rational(deviation);
}

std::string equal_line(bool equal, const Rational& deviation) {
  return equal ? "equal" : "different deviation=" + format_rational(deviation);
}

std::string count_sat_line(const Rational& total, int n) {
  if (!is_integer(total) || total < 0 || total > Rational(power_of_two(n))) {
    throw NotBooleanValued("satisfying-assignment count " + format_rational(total) +
                           " is not an integer in [0, 2^n]; the combination is not Boolean-valued");
  }
  return format_rational(total);
}

struct RangeArg {
  int lo = 0;
  int hi = 0;
};

RangeArg parse_range(const std::string& text) {
  RangeArg r;
  const auto colon = text.find(':');
  try {
    std::size_t used = 0;
    r.lo = std::stoi(text.substr(0, colon), &used);
    if (used != std::min(colon, text.size())) throw InputError("");
    if (colon == std::string::npos) {
      r.hi = r.lo;
    } else {
      const std::string tail = text.substr(colon + 1);
      r.hi = std::stoi(tail, &used);
      if (used != tail.size()) throw InputError("");
    }
  } catch (const std::exception&) {
    throw InputError("--n expects <n> or <lo>:<hi>, got \"" + text + "\"");
  }
  if (r.lo < 1 || r.hi > kMaxVariables || r.lo > r.hi) {
    throw InputError("--n range must lie within 1.." + std::to_string(kMaxVariables));
  }
  return r;
}

struct BenchArgs {
  std::string family = "thr";
  std::string n = "10";
  int k = 1;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string engine = "fast";
  std::uint32_t p = 3;
  int d = 2;
};

void run_bench(const BenchArgs& args, const Limits& limits, std::ostream& out) {
  const Family family = parse_family(args.family);
  const RangeArg range = parse_range(args.n);
  if (args.k < 0) throw InputError("--k must be non-negative");
  if (args.trials < 1) throw InputError("--trials must be positive");
  if (args.engine != "fast" && args.engine != "oracle") throw InputError("--engine must be fast or oracle");
  if (family == Family::fp && !is_prime(args.p)) throw InputError("--p must be prime");
  const bool oracle = args.engine == "oracle";

  // Rows are buffered so that nothing is printed if a later trial fails.
  std::ostringstream rows;
  rows << "family,n,k,trial,result,partials_enumerated,wall_ns\n";
  for (int n = range.lo; n <= range.hi; ++n) {
    for (int trial = 0; trial < args.trials; ++trial) {
      Rng rng(derive_seed(args.seed, static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(trial)));
      const GateList gates = random_gates(rng, family, n, args.k, args.p, args.d);
      MitmStats stats;
      const auto start = std::chrono::steady_clock::now();
      Rational result;
      if (oracle) {
        result = oracle_sumprod(gates, n, limits);
      } else if (family == Family::fp) {
        result = Rational(sumprod_fp(std::get<std::vector<FpPolynomial>>(gates), n, limits));
      } else {
        result = sumprod(gates, n, limits, &stats);
      }
      const auto wall =
          std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start).count();
      rows << to_string(family) << ',' << n << ',' << args.k << ',' << trial << ',' << format_rational(result) << ','
           << stats.partials_enumerated.load() << ',' << wall << '\n';
    }
  }
  out << rows.str();
}

std::vector<std::string> reversed(const std::vector<std::string>& args) { return {args.rbegin(), args.rend()}; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Sum-Products and Boolean checks for sparse gate combinations", "hypersum"};
  app.require_subcommand(1);
  app.fallthrough();

  CapFlags caps;
  app.add_option("--cap-oracle-n", caps.oracle_n, "Largest n the brute-force oracle accepts");
  app.add_option("--cap-terms", caps.terms, "Largest THR-to-ETHR decomposition");
  app.add_option("--cap-tuples", caps.tuples, "Largest number of target tuples / sign vectors");
  app.add_option("--cap-dense-n", caps.dense_n, "Largest dense evaluation table (in variables)");

  std::string file;
  std::string file2;
  int forced_m = -1;
  bool unchecked = false;
  std::string oracle_command;
  std::vector<std::string> oracle_files;
  BenchArgs bench;

  auto* sp = app.add_subcommand("sumprod", "Sum over {0,1}^n of the product of all gates");
  sp->add_option("file", file)->required();
  sp->add_option("--m", forced_m, "Suffix variables folded into Q (fp only)");

  auto* roots = app.add_subcommand("count-roots", "Roots in {0,1}^n of one F_p polynomial");
  roots->add_option("file", file)->required();
  roots->add_option("--m", forced_m, "Suffix variables folded into Q");

  auto* system = app.add_subcommand("count-system", "Points of {0,1}^n solving p_j(x) = t_j for all j");
  system->add_option("file", file)->required();
  system->add_option("--m", forced_m, "Suffix variables folded into Q");

  auto* boolean = app.add_subcommand("check-boolean", "Decide whether the combination is Boolean-valued");
  boolean->add_option("file", file)->required();

  auto* sat = app.add_subcommand("count-sat", "Number of points where the combination equals 1");
  sat->add_option("file", file)->required();
  sat->add_flag("--unchecked", unchecked, "Skip the Boolean-valued pre-check");

  auto* equal = app.add_subcommand("check-equal", "Decide whether two combinations agree everywhere");
  equal->add_option("file1", file)->required();
  equal->add_option("file2", file2)->required();

  auto* oracle = app.add_subcommand("oracle", "Brute-force counterpart of another subcommand");
  oracle->add_option("command", oracle_command)
      ->required()
      ->check(CLI::IsMember({"sumprod", "count-roots", "count-system", "check-boolean", "count-sat", "check-equal"}));
  oracle->add_option("files", oracle_files)->required()->expected(1, 2);
  oracle->add_flag("--unchecked", unchecked, "count-sat: skip the Boolean-valued check");

  auto* bench_cmd = app.add_subcommand("bench", "Time seeded random Sum-Product instances, CSV to stdout");
  bench_cmd->add_option("--family", bench.family)->required();
  bench_cmd->add_option("--n", bench.n, "<n> or <lo>:<hi>")->required();
  bench_cmd->add_option("--k", bench.k)->required();
  bench_cmd->add_option("--seed", bench.seed)->required();
  bench_cmd->add_option("--trials", bench.trials)->required();
  bench_cmd->add_option("--engine", bench.engine, "fast or oracle")->capture_default_str();
  bench_cmd->add_option("--p", bench.p, "Prime for the fp family")->capture_default_str();
  bench_cmd->add_option("--d", bench.d, "Degree bound for the fp family")->capture_default_str();

  try {
    auto argv = reversed(args);
    app.parse(argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitMalformed;
  }

  try {
    const Limits limits = caps.resolve();
    std::string line;
    if (*sp) {
      line = format_rational(fast_sumprod(load_document(file), forced_m, limits));
    } else if (*roots) {
      line = fast_count_roots(load_document(file), forced_m, limits).get_str();
    } else if (*system) {
      line = fast_count_system(load_document(file), forced_m, limits).get_str();
    } else if (*boolean) {
      const auto check = check_boolean(load_document(file).combination, limits);
      line = boolean_line(check.boolean, check.deviation);
    } else if (*sat) {
      line = count_sat(load_document(file).combination, {unchecked}, limits).get_str();
    } else if (*equal) {
      const auto check = check_equal(load_document(file).combination, load_document(file2).combination, limits);
      line = equal_line(check.equal, check.deviation);
    } else if (*oracle) {
      const bool pair = oracle_command == "check-equal";
      if (oracle_files.size() != (pair ? 2u : 1u)) {
        throw InputError("oracle " + oracle_command + " expects " + (pair ? "two files" : "one file"));
      }
      const CircuitDocument doc = load_document(oracle_files.front());
      const LinComb& c = doc.combination;
      if (oracle_command == "sumprod") {
        line = format_rational(oracle_sumprod(c.gates, c.n, limits));
      } else if (oracle_command == "count-roots") {
        const auto& polys = polynomials(doc, "count-roots");
        if (polys.size() != 1) throw InputError("count-roots needs exactly one polynomial");
        line = oracle_count_fp_system(polys, {0}, limits).get_str();
      } else if (oracle_command == "count-system") {
        line = oracle_count_fp_system(polynomials(doc, "count-system"), doc.targets, limits).get_str();
      } else if (oracle_command == "check-boolean") {
        const auto check = oracle_check_boolean(c, limits);
        if (check.witness) err << "witness x = " << check.witness->to_string() << '\n';
        line = boolean_line(check.boolean, check.boolean ? Rational(0) : oracle_boolean_deviation(c, limits));
      } else if (oracle_command == "count-sat") {
        line = unchecked ? count_sat_line(oracle_unchecked_total(c, limits), c.n) : oracle_count_sat(c, limits).get_str();
      } else {
        const LinComb c2 = load_document(oracle_files.back()).combination;
        if (c.n != c2.n) throw InputError("combinations have different variable counts");
        if (c.family() != c2.family()) throw InputError("combinations use different gate families");
        const Rational distance = oracle_squared_distance(c, c2, limits);
        line = equal_line(distance == 0, distance);
      }
    } else if (*bench_cmd) {
      run_bench(bench, limits, out);
      return kExitOk;
    }
    out << line << '\n';
    return kExitOk;
  } catch (const CapExceeded& e) {
    err << "error: resource cap exceeded: " << e.what() << '\n';
    return kExitCapExceeded;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kExitMalformed;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInvariant;
  }
}

}  // namespace hypersum::cli
