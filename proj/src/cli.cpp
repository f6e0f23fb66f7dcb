#include "etaparity/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "etaparity/arith.hpp"
#include "etaparity/congruence.hpp"
#include "etaparity/eta_quotient.hpp"
#include "etaparity/explore.hpp"

namespace etaparity {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::size_t terms = 100000;
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  std::string out_path;
  std::string format = "text";
  bool timing = false;
};

std::string join(const std::vector<std::uint64_t>& v, const char* sep = ",") {
  std::string s;
  for (auto x : v) {
    if (!s.empty()) s += sep;
    s += std::to_string(x);
  }
  return s;
}

std::string fixed(double v, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

// Parses "1 + T + 4T" style forms: integer offsets plus [c]P, [c]T, [c]S.
std::pair<std::int64_t, std::vector<FormTerm>> parse_form(const std::string& text) {
  std::int64_t offset = 0;
  std::vector<FormTerm> terms;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto plus = text.find('+', start);
    const auto end = plus == std::string::npos ? text.size() : plus;
    std::string piece = text.substr(start, end - start);
    piece.erase(std::remove_if(piece.begin(), piece.end(), ::isspace), piece.end());
    if (piece.empty()) {
      throw ParseError("empty term in form at position " + std::to_string(start), start);
    }
    const char last = piece.back();
    if (last == 'P' || last == 'T' || last == 'S') {
      const auto coef_text = piece.substr(0, piece.size() - 1);
      std::int64_t c = 1;
      if (!coef_text.empty()) {
        std::size_t used = 0;
        try {
          c = std::stoll(coef_text, &used);
        } catch (const std::exception&) {
          used = 0;
        }
        if (used != coef_text.size()) {
          throw ParseError("bad coefficient '" + coef_text + "' at position " +
                               std::to_string(start), start);
        }
      }
      const Shape shape = last == 'P'   ? Shape::Pentagonal
                          : last == 'T' ? Shape::Triangular
                                        : Shape::Square;
      terms.push_back({c, shape});
    } else {
      std::size_t used = 0;
      std::int64_t v = 0;
      try {
        v = std::stoll(piece, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != piece.size()) {
        throw ParseError("expected an integer or [c]P/[c]T/[c]S, got '" + piece +
                             "' at position " + std::to_string(start), start);
      }
      offset += v;
    }
    start = end + 1;
  }
  if (terms.size() > 3) throw UsageError("forms take at most three terms");
  return {offset, terms};
}

class Output {
 public:
  Output(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw UsageError("cannot open output file " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

void require_format(const RunConfig& cfg, std::initializer_list<const char*> allowed) {
  for (const auto* f : allowed) {
    if (cfg.format == f) return;
  }
  throw UsageError("unsupported --format '" + cfg.format + "' for this command");
}

int cmd_verify(const RunConfig& cfg, const std::string& filter,
               const std::string& catalog_path, std::ostream& out_default) {
  require_format(cfg, {"text", "structured"});
  if (cfg.terms < 1000) throw UsageError("--terms must be at least 1000 for verify");
  std::vector<CongruenceClaim> source;
  if (catalog_path.empty()) {
    source = catalog();
  } else {
    std::ifstream in(catalog_path);
    if (!in) throw UsageError("cannot read catalog " + catalog_path);
    std::stringstream ss;
    ss << in.rdbuf();
    source = parse_catalog(ss.str());
  }
  const auto claims = filter_claims(source, filter);
  if (claims.empty()) throw UsageError("no claim matches '" + filter + "'");

  const auto reports = verify_all(claims, cfg.terms, cfg.threads);
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    if (!r.passed()) ++failed;
    if (cfg.format == "structured") {
      os << to_record(r, cfg.timing) << '\n';
      continue;
    }
    os << (r.passed() ? "PASS " : "FAIL ") << r.name << "  checked=" << r.checked;
    if (!r.passed()) {
      std::vector<std::uint64_t> head(
          r.mismatches.begin(),
          r.mismatches.begin() + static_cast<std::ptrdiff_t>(std::min<std::size_t>(10, r.mismatches.size())));
      os << "  mismatches=" << r.mismatches.size() << " first n: " << join(head);
    }
    if (cfg.timing) os << "  " << fixed(r.millis, 1) << " ms";
    os << '\n';
  }
  if (cfg.format == "structured") {
    nlohmann::ordered_json s;
    s["total"] = reports.size();
    s["passed"] = reports.size() - failed;
    s["failed"] = failed;
    s["truncation"] = cfg.terms;
    os << s.dump() << '\n';
  } else {
    os << reports.size() - failed << "/" << reports.size()
       << " claims pass at N=" << cfg.terms << '\n';
  }
  return failed == 0 ? kAllPass : kMismatch;
}

int cmd_density(const RunConfig& cfg, const std::string& spec_text,
                std::uint64_t a, std::uint64_t b, std::size_t windows,
                std::ostream& out_default) {
  require_format(cfg, {"text", "structured", "csv"});
  const auto target = parse_eta_sum(spec_text);
  const auto report = odd_density(target, Progression(a, b), cfg.terms, windows);
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  if (cfg.format == "csv") {
    os << to_csv(report);
  } else if (cfg.format == "structured") {
    nlohmann::ordered_json j;
    j["target"] = report.target;
    j["progression"] = to_string(report.progression);
    j["truncation"] = report.truncation;
    j["length"] = report.length;
    j["odd_count"] = report.odd_total;
    j["density"] = report.overall;
    j["empirical"] = true;
    auto& w = j["windows"] = nlohmann::ordered_json::array();
    for (const auto& win : report.windows) {
      nlohmann::ordered_json e;
      e["window_start"] = win.start;
      e["window_end"] = win.end;
      e["odd_count"] = win.odd_count;
      e["density"] = win.density;
      w.push_back(e);
    }
    os << j.dump() << '\n';
  } else {
    os << "target " << report.target << " on " << to_string(report.progression)
       << ", N=" << report.truncation << " (" << report.length
       << " stream terms), empirical\n";
    for (const auto& win : report.windows) {
      os << "  [" << win.start << ", " << win.end << ")  odd=" << win.odd_count
         << "  density=" << fixed(win.density) << '\n';
    }
    os << "overall odd=" << report.odd_total << " density=" << fixed(report.overall)
       << '\n';
  }
  return kAllPass;
}

int cmd_search_even(const RunConfig& cfg, const std::string& spec_text,
                    std::uint64_t a_max, std::size_t min_hits,
                    std::ostream& out_default) {
  require_format(cfg, {"text", "structured"});
  if (a_max < 2) throw UsageError("--amax must be at least 2");
  const auto target = parse_eta_sum(spec_text);
  const auto found = search_even_progressions(target, a_max, cfg.terms, min_hits, cfg.threads);
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  for (const auto& c : found) {
    if (cfg.format == "structured") {
      nlohmann::ordered_json j;
      j["target"] = to_string(target);
      j["progression"] = to_string(c.progression);
      j["checked"] = c.checked;
      j["truncation"] = cfg.terms;
      j["status"] = "candidate";
      os << j.dump() << '\n';
    } else {
      os << "candidate " << to_string(c.progression) << "  checked=" << c.checked
         << "  (all even below N=" << cfg.terms << ")\n";
    }
  }
  if (cfg.format == "text") {
    os << found.size() << " candidate progression(s) with A <= " << a_max << '\n';
  }
  return kAllPass;
}

int cmd_rk_fit(const RunConfig& cfg, std::uint64_t a, std::uint64_t t,
               std::ostream& out_default) {
  require_format(cfg, {"text", "structured"});
  const auto pattern = fit_epsilons(a, t, cfg.terms);
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  const auto params = rk_parameters(a, t);
  if (!pattern) {
    if (cfg.format == "structured") {
      nlohmann::ordered_json j;
      j["a"] = a;
      j["t"] = t;
      j["result"] = "NO_SOLUTION";
      j["truncation"] = cfg.terms;
      os << j.dump() << '\n';
    } else {
      os << "NO_SOLUTION for a=" << a << " t=" << t << " at N=" << cfg.terms << '\n';
    }
    return kMismatch;
  }
  std::string active;
  EtaSum rhs;
  for (const auto& [d, j] : pattern->active_terms()) {
    if (!active.empty()) active += ",";
    active += "(" + std::to_string(d) + "," + std::to_string(j) + ")";
    rhs.push_back(params.term(d, j));
  }
  if (cfg.format == "structured") {
    nlohmann::ordered_json j;
    j["a"] = a;
    j["t"] = t;
    j["b"] = params.b;
    j["k"] = params.k;
    auto& arr = j["assignments"] = nlohmann::ordered_json::array();
    for (const auto& [key, on] : pattern->assignments) {
      arr.push_back({key.first, key.second, on ? 1 : 0});
    }
    j["identity"] = to_string(rhs);
    j["truncation"] = cfg.terms;
    os << j.dump() << '\n';
  } else {
    os << "pattern {" << active << "}\n";
    os << "q^" << params.k << " sum p_" << t << "(" << a << "n+" << params.b
       << ") q^n = " << to_string(rhs) << "  (checked below N=" << cfg.terms
       << ")\n";
    for (const auto& [key, on] : pattern->assignments) {
      os << "  eps(" << key.first << "," << key.second << ") = " << (on ? 1 : 0) << '\n';
    }
  }
  return kAllPass;
}

std::pair<std::uint64_t, std::uint64_t> parse_range(const std::string& text) {
  const auto dots = text.find("..");
  auto num = [&](const std::string& s, std::size_t pos) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty() || s[0] == '-') {
      throw ParseError("expected a nonnegative integer at position " + std::to_string(pos), pos);
    }
    return v;
  };
  if (dots == std::string::npos) {
    const auto v = num(text, 0);
    return {v, v};
  }
  const auto lo = num(text.substr(0, dots), 0);
  const auto hi = num(text.substr(dots + 2), dots + 2);
  if (hi < lo) throw UsageError("empty range " + text);
  return {lo, hi};
}

int cmd_b8(const RunConfig& cfg, const std::string& which, std::ostream& out_default) {
  require_format(cfg, {"text", "structured"});
  const auto [lo, hi] = parse_range(which);
  if (hi > (std::uint64_t{1} << 58)) throw UsageError("n too large for 64-bit 24n+7");
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  for (std::uint64_t n = lo;; ++n) {
    const auto c = b8_certificate(n);
    if (cfg.format == "structured") {
      nlohmann::ordered_json j;
      j["n"] = n;
      j["value"] = c.value;
      j["factorization"] = format_factorization(c.factors);
      j["parity"] = c.odd ? "odd" : "even";
      os << j.dump() << '\n';
    } else {
      os << "b8(" << n << ") " << (c.odd ? "odd" : "even") << "  24n+7 = " << c.value
         << " = " << format_factorization(c.factors) << '\n';
    }
    if (n == hi) break;
  }
  return kAllPass;
}

int cmd_residues(const RunConfig& cfg, const std::vector<std::string>& args,
                 const std::string& form, std::ostream& out_default) {
  require_format(cfg, {"text", "structured"});
  auto to_u64 = [](const std::string& s, const char* what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
      v = std::stoull(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || v == 0 || s[0] == '-') {
      throw UsageError(std::string("expected a positive integer ") + what + ", got '" + s + "'");
    }
    return v;
  };
  ResidueSet set(1);
  std::string label;
  if (!form.empty()) {
    if (args.size() != 1) throw UsageError("residues --form F takes one modulus");
    const auto m = to_u64(args[0], "modulus");
    const auto [offset, terms] = parse_form(form);
    set = form_residues(offset, terms, m);
    label = form + " mod " + args[0];
  } else {
    if (args.size() != 2) throw UsageError("residues takes <c> <m> or --form F <m>");
    const auto c = to_u64(args[0], "scale");
    const auto m = to_u64(args[1], "modulus");
    set = scaled_pentagonal_residues(c, m);
    label = args[0] + "*pentagonal mod " + args[1];
  }
  Output output(cfg.out_path, out_default);
  auto& os = output.stream();
  if (cfg.format == "structured") {
    nlohmann::ordered_json j;
    j["set"] = label;
    j["modulus"] = set.modulus();
    j["members"] = set.members();
    j["missing"] = set.complement().members();
    os << j.dump() << '\n';
  } else {
    os << join(set.members()) << '\n';
    os << "missing: " << join(set.complement().members()) << '\n';
  }
  return kAllPass;
}

int cmd_catalog(const RunConfig& cfg, std::ostream& out_default) {
  Output output(cfg.out_path, out_default);
  output.stream() << catalog_text();
  return kAllPass;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Parity of eta-quotient coefficients: congruence checks and probes",
               "etaparity"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool with_threads) {
    sub->add_option("--terms", cfg.terms, "Truncation N (number of series terms)")
        ->check(CLI::PositiveNumber);
    if (with_threads) {
      sub->add_option("--threads", cfg.threads, "Worker threads")->check(CLI::PositiveNumber);
    }
    sub->add_option("--format", cfg.format, "text | structured (| csv for density)");
    sub->add_option("--out", cfg.out_path, "Write output to this file");
  };

  std::string filter = "*";
  std::string catalog_path;
  auto* verify = app.add_subcommand("verify", "Verify catalog claims");
  add_common(verify, true);
  verify->add_option("--filter", filter, "Glob over claim names, e.g. 'thm1/*'");
  verify->add_option("--catalog", catalog_path, "Claim file to use instead of the built-in one");
  verify->add_flag("--timing", cfg.timing, "Include per-claim wall time");

  std::string spec_text;
  std::uint64_t prog_a = 1;
  std::uint64_t prog_b = 0;
  std::size_t windows = 10;
  auto* density = app.add_subcommand("density", "Odd density of a coefficient stream");
  add_common(density, false);
  density->add_option("spec", spec_text, "Eta-quotient, e.g. 'f10 / f1'")->required();
  density->add_option("-A,--A", prog_a, "Progression modulus")->check(CLI::PositiveNumber);
  density->add_option("-B,--B", prog_b, "Progression residue");
  density->add_option("--windows", windows, "Number of equal windows")->check(CLI::PositiveNumber);

  std::uint64_t a_max = 30;
  std::size_t min_hits = 200;
  auto* search = app.add_subcommand("search-even", "Search identically even progressions");
  add_common(search, true);
  search->add_option("spec", spec_text, "Eta-quotient")->required();
  search->add_option("--amax", a_max, "Largest modulus A");
  search->add_option("--min-hits", min_hits, "Least number of checked indices");

  std::uint64_t rk_a = 0;
  std::uint64_t rk_t = 0;
  auto* rk = app.add_subcommand("rk-fit", "Fit Ramanujan-Kolberg epsilons");
  add_common(rk, false);
  rk->add_option("a", rk_a, "Odd modulus a")->required();
  rk->add_option("t", rk_t, "Odd multipartition order t")->required();

  std::string b8_arg;
  auto* b8 = app.add_subcommand("b8-oracle", "Parity of b_8(n) from 24n+7");
  b8->alias("b8");
  b8->add_option("n", b8_arg, "n or lo..hi")->required();
  b8->add_option("--format", cfg.format, "text | structured");
  b8->add_option("--out", cfg.out_path, "Write output to this file");

  std::vector<std::string> res_args;
  std::string form;
  auto* residues = app.add_subcommand("residues", "Residue sets of pentagonal/triangular forms");
  residues->add_option("args", res_args, "<c> <m>, or <m> with --form");
  residues->add_option("--form", form, "e.g. '1 + T + 4T' (P, T, S shapes)");
  residues->add_option("--format", cfg.format, "text | structured");
  residues->add_option("--out", cfg.out_path, "Write output to this file");

  auto* cat = app.add_subcommand("catalog", "Print the built-in claim file");
  cat->add_option("--out", cfg.out_path, "Write output to this file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kAllPass : kUsage;
  }

  try {
    if (*verify) return cmd_verify(cfg, filter, catalog_path, out);
    if (*density) return cmd_density(cfg, spec_text, prog_a, prog_b, windows, out);
    if (*search) return cmd_search_even(cfg, spec_text, a_max, min_hits, out);
    if (*rk) return cmd_rk_fit(cfg, rk_a, rk_t, out);
    if (*b8) return cmd_b8(cfg, b8_arg, out);
    if (*residues) return cmd_residues(cfg, res_args, form, out);
    if (*cat) return cmd_catalog(cfg, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  } catch (const std::domain_error& e) {
    err << "invalid argument: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace etaparity
