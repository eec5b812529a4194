#pragma once

// Command-line front end: igusa {compute|oracle|check} POLY --prime P ...
// Every result is first built as a JSON document; text and LaTeX output are
// rendered from that document, so cached and fresh runs print the same bytes.

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <openssl/evp.h>

#include "CLI11.hpp"
#include "igusa/igusa.hpp"

namespace igusa::cli {

struct Job {
  std::string command;
  std::string polynomial;
  std::uint32_t prime = 0;
  std::string char_mode = "0";
  std::optional<WeightSystem> weights;
  std::optional<std::uint32_t> expand;
  std::uint32_t levels = 4;
  std::string format = "text";
  std::uint32_t max_depth = 64;
  std::uint32_t max_iter = 32;
  std::uint64_t budget = kDefaultEnumerationCap;
  std::string trace_file;
  std::string cache_dir;
};

/// "a1,a2,...:d"
inline WeightSystem parse_weights(const std::string& text) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) throw InvalidParameters("weights must look like a1,a2,...:d, got '" + text + "'");
  WeightSystem w;
  std::stringstream ss(text.substr(0, colon));
  std::string item;
  try {
    while (std::getline(ss, item, ',')) w.alpha.push_back(static_cast<std::uint32_t>(std::stoul(item)));
    w.d = static_cast<std::uint32_t>(std::stoul(text.substr(colon + 1)));
  } catch (const std::logic_error&) {
    throw InvalidParameters("weights must look like a1,a2,...:d, got '" + text + "'");
  }
  if (w.alpha.empty()) throw InvalidParameters("no weights given in '" + text + "'");
  return w;
}

inline std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("SHA-256 failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i) hex << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return hex.str();
}

/// Content-addressed store of JSON documents under dir/<sha256>.json.
class ResultCache {
 public:
  explicit ResultCache(std::string dir) : dir_(std::move(dir)) {}

  bool enabled() const { return !dir_.empty(); }

  std::optional<json> load(const std::string& key) const {
    if (!enabled()) return std::nullopt;
    std::ifstream in(path(key));
    if (!in) return std::nullopt;
    try {
      return json::parse(in);
    } catch (const json::exception&) {
      return std::nullopt;  // unreadable entry: recompute and overwrite
    }
  }

  void store(const std::string& key, const json& doc) const {
    if (!enabled()) return;
    std::filesystem::create_directories(dir_);
    const auto final_path = path(key);
    const auto tmp = final_path.string() + ".tmp";
    {
      std::ofstream out(tmp);
      out << doc.dump();
    }
    std::filesystem::rename(tmp, final_path);
  }

 private:
  std::filesystem::path path(const std::string& key) const { return std::filesystem::path(dir_) / (sha256_hex(key) + ".json"); }

  std::string dir_;
};

namespace detail {

inline std::string rational_text(const json& q) {
  const mpq_class v = rational_from_json(q);
  return v.get_str();
}

template <CoefficientRing Ring>
MultiPoly<Ring> parse_input(const Job& job, const Ring& ring) {
  return parse_polynomial(job.polynomial, ring);
}

inline std::string caps_key(const Job& job) {
  return std::to_string(job.max_depth) + "|" + std::to_string(job.max_iter) + "|" + std::to_string(job.budget);
}

/// Z, P and the driver report for one polynomial. trace receives the
/// dilatation trees when requested.
template <CoefficientRing Ring>
json compute_document(const Job& job, const MultiPoly<Ring>& F, json* trace) {
  SqhConfig cfg;
  cfg.spf.max_depth = job.max_depth;
  cfg.spf.budget = job.budget;
  cfg.spf.trace = trace != nullptr;
  cfg.max_iterations = job.max_iter;
  const std::uint32_t p = F.ring().prime();

  json doc;
  doc["input"] = render(F);
  doc["p"] = p;
  doc["char"] = Ring::char_zero ? "0" : "p";
  doc["ring"] = F.ring().name();
  doc["n"] = F.nvars();

  RatFun Z(p);
  if (F.has_constant_term() || F.is_zero()) {
    SpfResult r = spf_zeta(F, cfg.spf);
    Z = r.zeta;
    doc["method"] = "spf";
    doc["tree_stats"] = stats_to_json(r.stats);
    if (trace) *trace = {{"tree", trace_to_json(r.trace)}};
  } else {
    SqhResult r = zeta_semiquasihomogeneous(F, job.weights, cfg);
    Z = r.zeta;
    doc["method"] = "sqh";
    doc["report"] = report_to_json(Z, r.report);
    doc["tree_stats"] = stats_to_json(r.report.stats);
    if (trace) {
      json steps = json::array();
      for (const auto& s : r.report.step_traces) steps.push_back(cell_traces_to_json(s));
      *trace = {{"limit", cell_traces_to_json(r.report.limit_trace)}, {"steps", steps}};
    }
  }
  doc["zeta"] = ratfun_to_json(Z);
  doc["pole_real_parts"] = poles_to_json(Z.pole_real_parts());
  const PoincareSeries P = poincare_from_zeta(Z, F.nvars());
  doc["poincare"] = ratfun_to_json(P.P);
  if (job.expand) {
    json N = json::array();
    for (const auto& v : P.counts(*job.expand)) N.push_back(integer_to_json(v));
    doc["N"] = N;
  }
  return doc;
}

template <CoefficientRing Ring>
json oracle_document(const Job& job, const MultiPoly<Ring>& F) {
  const auto counts = oracle_counts(F, job.levels, job.budget);
  std::vector<mpz_class> N;
  for (auto c : counts) N.push_back(mpz_class(std::to_string(c)));
  json doc = counts_to_json(F.ring().prime(), F.nvars(), N);
  doc["input"] = render(F);
  doc["char"] = Ring::char_zero ? "0" : "p";
  return doc;
}

/// Recognizes a*x^n + b*y^m with a a unit (either order of terms).
template <CoefficientRing Ring>
std::optional<std::pair<std::pair<std::uint32_t, std::uint32_t>, std::pair<typename Ring::element_type, typename Ring::element_type>>>
binomial_shape(const MultiPoly<Ring>& F) {
  if (F.nvars() != 2 || F.size() != 2) return std::nullopt;
  std::optional<std::pair<std::uint32_t, typename Ring::element_type>> xs, ys;
  for (const auto& [e, c] : F.terms()) {
    if (e[0] > 0 && e[1] == 0) xs = {{e[0], c}};
    else if (e[1] > 0 && e[0] == 0) ys = {{e[1], c}};
  }
  if (!xs || !ys) return std::nullopt;
  return {{{xs->first, ys->first}, {xs->second, ys->second}}};
}

template <CoefficientRing Ring>
json check_document(const Job& job, const MultiPoly<Ring>& F) {
  Job compute_job = job;
  compute_job.expand = job.levels;
  const json doc = compute_document(compute_job, F, nullptr);
  const std::uint32_t p = F.ring().prime();
  const RatFun Z = ratfun_from_json(doc["zeta"], p);

  json checks = json::array();
  auto add = [&](const std::string& name, bool pass, const std::string& detail) {
    checks.push_back({{"name", name}, {"pass", pass}, {"detail", detail}});
  };

  const ResidueRegion full = ResidueRegion::full(p, F.nvars());
  add("series", series_check(F, full, Z, job.levels, job.budget),
      "t-coefficients of Z against counted measures, j < " + std::to_string(job.levels));

  const auto oracle = oracle_counts(F, job.levels, job.budget);
  bool same = doc["N"].size() == oracle.size();
  for (std::size_t j = 0; same && j < oracle.size(); ++j)
    same = integer_from_json(doc["N"][j]) == mpz_class(std::to_string(oracle[j]));
  add("counts", same, "N_j from P(t) against exhaustive counts, j <= " + std::to_string(job.levels));

  if (auto shape = binomial_shape(F)) {
    const auto [nm, ab] = *shape;
    const auto [n, m] = nm;
    const Ring& R = F.ring();
    if (n > 1 && m > 1 && std::gcd(n, m) == 1 && !(n % p == 0 && m % p == 0) &&
        R.valuation(ab.first) == ExtNat(0)) {
      const RatFun closed = binomial_closed_form(n, m, ab.first, ab.second, R);
      add("closed-form", closed == Z, "binomial closed form for x^" + std::to_string(n) + ", y^" + std::to_string(m));
    }
  }

  bool all = true;
  for (const auto& c : checks) all = all && c["pass"].get<bool>();
  return {{"input", doc["input"]}, {"p", p}, {"char", doc["char"]}, {"checks", checks}, {"pass", all}};
}

inline void render_compute(const json& doc, const std::string& format, std::ostream& out) {
  const std::uint32_t p = doc["p"].get<std::uint32_t>();
  const RatFun Z = ratfun_from_json(doc["zeta"], p);
  const RatFun P = ratfun_from_json(doc["poincare"], p);
  std::vector<std::string> poles;
  for (const auto& q : doc["pole_real_parts"]) poles.push_back(rational_text(q));

  if (format == "latex") {
    out << "% t = " << p << "^{-s}\n";
    out << "Z(t) = " << Z.to_latex() << "\n";
    out << "P(t) = " << P.to_latex() << "\n";
    return;
  }
  out << "F = " << doc["input"].get<std::string>() << " over " << doc["ring"].get<std::string>() << "\n";
  if (doc["method"] == "sqh") {
    const json& r = doc["report"];
    out << "weights = (";
    for (std::size_t i = 0; i < r["weights"].size(); ++i) out << (i ? "," : "") << r["weights"][i].get<std::uint32_t>();
    out << "), d = " << r["d"].get<std::uint32_t>() << ", k0 = " << r["k0"].get<std::uint64_t>()
        << (r["quasihomogeneous"].get<bool>() ? " (quasihomogeneous)" : "") << "\n";
  } else {
    out << "constant term present: single stationary phase expansion\n";
  }
  out << "Z(t) = " << Z.to_string() << "    [t = " << p << "^-s]\n";
  out << "denominator factors (a,b):";
  for (const auto& f : doc["zeta"]["denom"]) out << " (" << f["a"].get<std::uint32_t>() << "," << f["b"].get<std::uint32_t>() << ")";
  out << "\npole real parts:";
  for (const auto& s : poles) out << " " << s;
  out << "\nP(t) = " << P.to_string() << "\n";
  if (doc.contains("N")) {
    out << "N:";
    for (const auto& v : doc["N"]) out << " " << integer_from_json(v).get_str();
    out << "\n";
  }
  const json& s = doc["tree_stats"];
  out << "tree: " << s["nodes"].get<std::uint64_t>() << " nodes, " << s["leaves"].get<std::uint64_t>() << " leaves, depth "
      << s["max_depth"].get<std::uint64_t>() << ", max E " << s["max_E"].get<std::uint64_t>() << ", "
      << s["evaluations"].get<std::uint64_t>() << " point evaluations\n";
}

inline void render_oracle(const json& doc, const std::string& format, std::ostream& out) {
  if (format == "latex") {
    out << "N = (";
    for (std::size_t j = 0; j < doc["N"].size(); ++j) out << (j ? ", " : "") << integer_from_json(doc["N"][j]).get_str();
    out << ")\n";
    return;
  }
  out << "F = " << doc["input"].get<std::string>() << ", p = " << doc["p"].get<std::uint32_t>() << "\nN:";
  for (const auto& v : doc["N"]) out << " " << integer_from_json(v).get_str();
  out << "\n";
}

inline void render_check(const json& doc, std::ostream& out) {
  out << "F = " << doc["input"].get<std::string>() << ", p = " << doc["p"].get<std::uint32_t>() << "\n";
  for (const auto& c : doc["checks"])
    out << (c["pass"].get<bool>() ? "PASS " : "FAIL ") << c["name"].get<std::string>() << ": " << c["detail"].get<std::string>() << "\n";
  out << (doc["pass"].get<bool>() ? "all checks passed" : "check failed") << "\n";
}

template <CoefficientRing Ring>
int execute(const Job& job, const Ring& ring, std::ostream& out) {
  const MultiPoly<Ring> F = parse_input(job, ring);
  const ResultCache cache(job.cache_dir);
  const std::string weights = job.weights ? job.weights->to_string() : "auto";

  if (job.command == "compute") {
    const bool want_trace = !job.trace_file.empty();
    const std::string key = "compute|1|" + job.char_mode + "|" + std::to_string(ring.prime()) + "|" +
                            std::to_string(F.nvars()) + "|" + render(F) + "|" + weights + "|" +
                            (job.expand ? std::to_string(*job.expand) : "-") + "|" + caps_key(job) + "|" +
                            (want_trace ? "trace" : "-");
    json entry;
    if (auto hit = cache.load(key)) {
      entry = std::move(*hit);
    } else {
      json trace;
      entry["doc"] = compute_document(job, F, want_trace ? &trace : nullptr);
      if (want_trace) entry["trace"] = trace;
      cache.store(key, entry);
    }
    if (want_trace) {
      std::ofstream t(job.trace_file);
      if (!t) throw InvalidParameters("cannot write trace file " + job.trace_file);
      t << entry["trace"].dump(2) << "\n";
    }
    if (job.format == "json") out << entry["doc"].dump(2) << "\n";
    else render_compute(entry["doc"], job.format, out);
    return 0;
  }

  if (job.command == "oracle") {
    const std::string key = "oracle|1|" + job.char_mode + "|" + std::to_string(ring.prime()) + "|" +
                            std::to_string(F.nvars()) + "|" + render(F) + "|" + std::to_string(job.levels) + "|" +
                            std::to_string(job.budget);
    json doc;
    if (auto hit = cache.load(key)) {
      doc = std::move(*hit);
    } else {
      doc = oracle_document(job, F);
      cache.store(key, doc);
    }
    if (job.format == "json") out << doc.dump(2) << "\n";
    else render_oracle(doc, job.format, out);
    return 0;
  }

  const json doc = check_document(job, F);
  if (job.format == "json") out << doc.dump(2) << "\n";
  else render_check(doc, out);
  return doc["pass"].get<bool>() ? 0 : 1;
}

}  // namespace detail

/// Runs one invocation; args excludes the program name. Returns the exit code.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Igusa local zeta functions of semiquasihomogeneous polynomials", "igusa"};
  app.require_subcommand(1);
  Job job;
  if (const char* env = std::getenv("IGUSA_CACHE_DIR")) job.cache_dir = env;
  std::string weights;
  std::uint32_t expand = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("polynomial", job.polynomial, "polynomial, e.g. \"x^2+y^3\"")->required();
    sub->add_option("--prime,-p", job.prime, "residue characteristic p")->required();
    sub->add_option("--char", job.char_mode, "0 for Q_p, p for F_p((u))")->check(CLI::IsMember({"0", "p"}));
    sub->add_option("--format", job.format, "text, json or latex")->check(CLI::IsMember({"text", "json", "latex"}));
    sub->add_option("--budget", job.budget, "cap on point evaluations")->check(CLI::PositiveNumber);
    sub->add_option("--cache", job.cache_dir, "result cache directory (default $IGUSA_CACHE_DIR)");
  };
  auto engine = [&](CLI::App* sub) {
    sub->add_option("--weights", weights, "weight hint \"a1,a2,...:d\"");
    sub->add_option("--max-depth", job.max_depth, "dilatation depth cap")->check(CLI::PositiveNumber);
    sub->add_option("--max-iter", job.max_iter, "cap on scaling iterations")->check(CLI::PositiveNumber);
  };

  CLI::App* compute = app.add_subcommand("compute", "compute Z(F,s) and P(t)");
  common(compute);
  engine(compute);
  CLI::Option* expand_opt = compute->add_option("--expand", expand, "also print N_0..N_J from P(t)");
  compute->add_option("--trace", job.trace_file, "write the dilatation trees as JSON");

  CLI::App* oracle = app.add_subcommand("oracle", "count solutions mod p^j exhaustively");
  common(oracle);
  oracle->add_option("--levels", job.levels, "largest j");

  CLI::App* check = app.add_subcommand("check", "compare engine, counting and closed form");
  common(check);
  engine(check);
  check->add_option("--levels", job.levels, "largest j");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    job.command = app.get_subcommands().front()->get_name();
    if (!weights.empty()) job.weights = parse_weights(weights);
    if (expand_opt->count()) job.expand = expand;
    if (!is_prime(job.prime)) throw InvalidParameters(std::to_string(job.prime) + " is not prime");
    if (job.char_mode == "0") return detail::execute(job, ZpRing(job.prime), out);
    return detail::execute(job, FpPiRing(job.prime), out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace igusa::cli
