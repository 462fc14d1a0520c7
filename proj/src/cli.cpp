#include "sg/cli.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sg/ginibre.hpp"
#include "sg/montecarlo.hpp"
#include "sg/pfaffian.hpp"
#include "sg/rational.hpp"
#include "sg/symfunc.hpp"

namespace sg {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

int emit_payload(const std::string& payload, const RunConfig& cfg,
                 std::ostream& out, std::ostream& err) {
  if (cfg.output_path) {
    std::ofstream file(*cfg.output_path, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << *cfg.output_path << " for writing\n";
      return kExitUsage;
    }
    file << payload;
    return kExitOk;
  }
  out << payload;
  return kExitOk;
}

// "p/q", "12", "0.3", "-0.25" -> exact rational.
Rational parse_decimal_rational(const std::string& token) {
  if (token.empty()) throw std::invalid_argument("empty number");
  if (token.find('/') != std::string::npos) {
    Rational q(token);
    q.canonicalize();
    return q;
  }
  std::string s = token;
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  const auto dot = s.find('.');
  std::string digits = s;
  std::size_t frac_len = 0;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    frac_len = s.size() - dot - 1;
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](unsigned char c) { return std::isdigit(c); }))
    throw std::invalid_argument("not a number: " + token);
  Integer num(digits, 10);
  Integer den = 1;
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rational r(num, den);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) parts.push_back(item);
  return parts;
}

std::vector<std::size_t> parse_index_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const std::string& tok : split_csv(text)) {
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc() || p != tok.data() + tok.size())
      throw std::invalid_argument("bad index list entry: " + tok);
    out.push_back(v);
  }
  return out;
}

std::string radical_to_string(const RadicalScalar& r) {
  std::string s = to_decimal_string(r.coeff);
  if (r.sqrt2_pow == 1)
    s += " * sqrt(2)";
  else if (r.sqrt2_pow == -1)
    s += " / sqrt(2)";
  const int q = r.sqrtpi_pow;
  if (q != 0) {
    if (q % 2 == 0) {
      s += " * pi";
      if (q / 2 != 1) s += "^" + std::to_string(q / 2);
    } else {
      s += " * sqrt(pi)";
      if (q != 1) s += "^" + std::to_string(q);
    }
  }
  return s;
}

// ----------------------------------------------------------------- avg ---

int cmd_avg(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const Partition& lambda = *cfg.partition;
  const unsigned dim = cfg.dim;
  const bool too_long = lambda.length() > dim;

  const Rational closed = schur_average_closed(lambda, dim);
  std::optional<Rational> pfaff;
  std::size_t embed_used = 0;
  if (!too_long && cfg.method != Method::closed) {
    embed_used =
        cfg.embed_dim ? cfg.embed_dim : embedding_dimension(lambda, dim);
    pfaff = schur_average_pfaffian(lambda, dim, cfg.embed_dim);
  }

  const bool agree = !pfaff || *pfaff == closed;
  const Rational& value =
      (cfg.method == Method::pfaffian && pfaff) ? *pfaff : closed;

  std::vector<std::string> routes;
  if (cfg.method != Method::pfaffian || too_long) routes.push_back("closed");
  if (pfaff) routes.push_back("pfaffian");

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "avg";
    j["partition"] = lambda.to_string();
    j["dim"] = dim;
    j["method"] = cfg.method == Method::closed     ? "closed"
                  : cfg.method == Method::pfaffian ? "pfaffian"
                                                   : "both";
    j["value"] = to_decimal_string(value);
    j["routes"] = routes;
    j["routes_agree"] = agree;
    if (embed_used) j["embed_dim"] = embed_used;
    if (too_long)
      j["note"] = "partition longer than dimension; zero by convention";
    payload = j.dump(2) + "\n";
  } else if (cfg.output == OutputFormat::csv) {
    std::ostringstream os;
    os << "partition,dim,method,value\n";
    os << '"' << lambda.to_string() << "\"," << dim << ','
       << (cfg.method == Method::closed     ? "closed"
           : cfg.method == Method::pfaffian ? "pfaffian"
                                            : "both")
       << ',' << to_decimal_string(value) << '\n';
    payload = os.str();
  } else {
    std::ostringstream os;
    os << "<sigma_[" << lambda.to_string() << "]>_" << dim << " = "
       << to_decimal_string(value) << '\n';
    os << "routes: ";
    for (std::size_t i = 0; i < routes.size(); ++i)
      os << (i ? ", " : "") << routes[i];
    if (embed_used) os << " (embedding " << embed_used << ")";
    os << (agree ? "; agree" : "; DISAGREE") << '\n';
    if (too_long)
      os << "note: partition longer than dimension; zero by convention\n";
    payload = os.str();
  }

  const int emitted = emit_payload(payload, cfg, out, err);
  if (emitted != kExitOk) return emitted;
  if (!agree) {
    err << "error: closed form " << to_decimal_string(closed)
        << " != pfaffian route " << to_decimal_string(*pfaff) << '\n';
    return kExitRouteDisagreement;
  }
  return kExitOk;
}

// --------------------------------------------------------------- table ---

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  constexpr unsigned kWeightCap = 40;
  if (cfg.max_weight > kWeightCap) {
    err << "error: --max-weight is capped at " << kWeightCap << '\n';
    return kExitUsage;
  }
  const unsigned max_length = cfg.max_length ? cfg.max_length : cfg.dim;
  const unsigned max_part = cfg.max_part ? cfg.max_part : cfg.max_weight;

  struct Row {
    Partition lambda;
    Rational value;
  };
  std::vector<Row> rows;
  for (Partition& lambda :
       enumerate_partitions(cfg.max_weight, max_length, max_part)) {
    Rational closed = schur_average_closed(lambda, cfg.dim);
    if (cfg.method != Method::closed && lambda.length() <= cfg.dim) {
      Rational alt = schur_average_pfaffian(lambda, cfg.dim);
      if (alt != closed) {
        err << "error: route disagreement at partition ["
            << lambda.to_string() << "]\n";
        return kExitRouteDisagreement;
      }
    }
    rows.push_back({std::move(lambda), std::move(closed)});
  }

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "table";
    j["dim"] = cfg.dim;
    j["max_weight"] = cfg.max_weight;
    j["max_length"] = max_length;
    j["max_part"] = max_part;
    j["order"] = "decreasing lexicographic";
    Json list = Json::array();
    for (const Row& r : rows) {
      Json e;
      e["partition"] = r.lambda.to_string();
      e["weight"] = r.lambda.weight();
      e["value"] = to_decimal_string(r.value);
      list.push_back(std::move(e));
    }
    j["rows"] = std::move(list);
    payload = j.dump(2) + "\n";
  } else if (cfg.output == OutputFormat::csv) {
    std::ostringstream os;
    os << "partition,weight,dim,value\n";
    for (const Row& r : rows)
      os << '"' << r.lambda.to_string() << "\"," << r.lambda.weight() << ','
         << cfg.dim << ',' << to_decimal_string(r.value) << '\n';
    payload = os.str();
  } else {
    std::ostringstream os;
    os << "partition  weight  value  (dim " << cfg.dim << ")\n";
    for (const Row& r : rows)
      os << '[' << r.lambda.to_string() << "]  " << r.lambda.weight() << "  "
         << to_decimal_string(r.value) << '\n';
    payload = os.str();
  }
  return emit_payload(payload, cfg, out, err);
}

// ----------------------------------------------------------- mc-verify ---

struct StatResult {
  std::string id;
  Rational target;
  MomentEstimate estimate;
  std::optional<MomentEstimate> imag;
  std::uint64_t rejected = 0;
  double z = 0.0;
  bool pass = true;
};

double z_score(double mean, double target, double se) {
  const double floor = 1e-15 * std::max(1.0, std::abs(target));
  return (mean - target) / std::max(se, floor);
}

int cmd_mc_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.samples < 100) {
    err << "error: --samples must be at least 100\n";
    return kExitUsage;
  }
  if (cfg.output == OutputFormat::csv) {
    err << "error: mc-verify reports as json or text\n";
    return kExitUsage;
  }
  McOptions opts{cfg.samples, cfg.seed, cfg.threads, !cfg.serial};

  struct Spec {
    enum Kind { kSchur, kTrace, kCharpoly } kind;
    Partition lambda{std::vector<unsigned>{}};
    unsigned dim = 0;
    unsigned power = 0;
    Rational x1{0}, x2{0};
    std::string id;
    Rational target{0};
  };

  std::vector<Spec> specs;
  const std::vector<std::vector<unsigned>> lambda_parts = {
      {2}, {4}, {2, 2}, {4, 2}, {2, 2, 2}, {1}, {3, 1}};
  const std::vector<unsigned> dims = {2, 4, 6};
  for (unsigned n : dims)
    for (const auto& parts : lambda_parts) {
      Spec s;
      s.kind = Spec::kSchur;
      s.lambda = Partition(parts);
      s.dim = n;
      s.id = "schur[" + s.lambda.to_string() + "] N=" + std::to_string(n);
      s.target = schur_average_closed(s.lambda, n);
      specs.push_back(std::move(s));
    }
  for (unsigned n : dims)
    for (unsigned p : {2u, 3u, 4u, 6u}) {
      Spec s;
      s.kind = Spec::kTrace;
      s.dim = n;
      s.power = p;
      s.id = "trace^" + std::to_string(p) + " N=" + std::to_string(n);
      s.target = trace_moment_power(p, n);
      specs.push_back(std::move(s));
    }
  {
    Spec s;
    s.kind = Spec::kCharpoly;
    s.dim = 3;
    s.x1 = Rational(3, 10);
    s.x2 = Rational(-1, 5);
    s.id = "charpoly(0.3,-0.2) N=3";
    s.target = charpoly_product_average<Rational>({s.x1, s.x2}, s.dim);
    specs.push_back(std::move(s));
  }
  {
    Spec s;
    s.kind = Spec::kCharpoly;
    s.dim = 2;
    s.x1 = Rational(1, 2);
    s.x2 = Rational(1, 2);
    s.id = "charpoly(0.5,0.5) N=2";
    s.target = charpoly_product_average<Rational>({s.x1, s.x2}, s.dim);
    specs.push_back(std::move(s));
  }

  if (!cfg.stats_filter.empty()) {
    std::erase_if(specs, [&](const Spec& s) {
      return s.id.find(cfg.stats_filter) == std::string::npos;
    });
    if (specs.empty()) {
      err << "error: no statistic matches filter '" << cfg.stats_filter
          << "'\n";
      return kExitUsage;
    }
  }

  std::vector<StatResult> results;
  results.reserve(specs.size());
  for (std::size_t i = 0; i < specs.size(); ++i) {
    const Spec& s = specs[i];
    StatResult r;
    r.id = s.id;
    r.target = s.target;
    if (cfg.inject_error && i == 0) r.target += 10;
    switch (s.kind) {
      case Spec::kSchur: {
        SchurAverageEstimate est = estimate_schur_average(s.lambda, s.dim,
                                                          opts);
        r.estimate = std::move(est.real_part);
        r.imag = std::move(est.imag_part);
        r.rejected = est.rejected;
        break;
      }
      case Spec::kTrace:
        r.estimate = estimate_trace_moment(s.power, s.dim, opts);
        break;
      case Spec::kCharpoly:
        r.estimate = estimate_charpoly_pair(to_double(s.x1), to_double(s.x2),
                                            s.dim, opts);
        break;
    }
    r.estimate.statistic_id = s.id;
    r.z = z_score(r.estimate.mean, to_double(r.target), r.estimate.std_error);
    bool imag_ok = true;
    if (r.imag) {
      imag_ok = std::abs(r.imag->mean) <=
                std::max(5.0 * r.imag->std_error, 1e-12);
    }
    r.pass = std::abs(r.z) < 5.0 && imag_ok;
    results.push_back(std::move(r));
  }

  bool all_pass = true;
  double max_abs_z = 0.0;
  for (const StatResult& r : results) {
    all_pass = all_pass && r.pass;
    max_abs_z = std::max(max_abs_z, std::abs(r.z));
  }

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "mc-verify";
    j["samples"] = cfg.samples;
    j["seed"] = cfg.seed;
    j["threads"] = resolve_thread_count(opts);
    j["injected_error"] = cfg.inject_error;
    Json list = Json::array();
    for (const StatResult& r : results) {
      Json e;
      e["id"] = r.id;
      e["target"] = to_decimal_string(r.target);
      e["target_value"] = to_double(r.target);
      e["estimate"] = r.estimate.mean;
      e["std_error"] = r.estimate.std_error;
      e["z_score"] = r.z;
      e["n_samples"] = r.estimate.n_samples;
      e["seed"] = cfg.seed;
      e["pass"] = r.pass;
      if (r.imag) {
        e["imag_mean"] = r.imag->mean;
        e["imag_std_error"] = r.imag->std_error;
        e["rejected"] = r.rejected;
      }
      list.push_back(std::move(e));
    }
    j["statistics"] = std::move(list);
    j["all_pass"] = all_pass;
    j["max_abs_z"] = max_abs_z;
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    for (const StatResult& r : results) {
      os << (r.pass ? "[ ok ] " : "[FAIL] ") << r.id << "  estimate "
         << fmt(r.estimate.mean) << " +- " << fmt(r.estimate.std_error)
         << "  target " << to_decimal_string(r.target) << "  z " << fmt(r.z)
         << '\n';
    }
    os << "summary: "
       << std::count_if(results.begin(), results.end(),
                        [](const StatResult& r) { return r.pass; })
       << '/' << results.size() << " pass, max |z| " << fmt(max_abs_z)
       << ", samples " << cfg.samples << ", seed " << cfg.seed << '\n';
    payload = os.str();
  }

  const int emitted = emit_payload(payload, cfg, out, err);
  if (emitted != kExitOk) return emitted;
  if (!all_pass) {
    err << "error: statistical verification failed (max |z| "
        << fmt(max_abs_z) << ")\n";
    return kExitStatisticalFailure;
  }
  return kExitOk;
}

// -------------------------------------------------------------- expand ---

int cmd_expand_power_sum(const RunConfig& cfg, std::ostream& out,
                         std::ostream& err) {
  const unsigned n = cfg.power_sum;
  struct Term {
    Partition hook;
    int sign;
    Rational average;
  };
  std::vector<Term> terms;
  Rational total{0};
  for (const auto& [hook, sign] : hook_partitions(n)) {
    Rational avg = schur_average_closed(hook, cfg.dim);
    total += Rational(sign) * avg;
    terms.push_back({hook, sign, std::move(avg)});
  }
  const Rational direct = trace_moment_power(n, cfg.dim);
  if (total != direct) {
    err << "error: hook expansion does not reproduce the trace moment\n";
    return kExitStatisticalFailure;
  }

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "expand";
    j["mode"] = "power-sum";
    j["n"] = n;
    j["dim"] = cfg.dim;
    Json list = Json::array();
    for (const Term& t : terms) {
      Json e;
      e["partition"] = t.hook.to_string();
      e["sign"] = t.sign;
      e["average"] = to_decimal_string(t.average);
      list.push_back(std::move(e));
    }
    j["terms"] = std::move(list);
    j["sum"] = to_decimal_string(total);
    payload = j.dump(2) + "\n";
  } else if (cfg.output == OutputFormat::csv) {
    std::ostringstream os;
    os << "partition,sign,average\n";
    for (const Term& t : terms)
      os << '"' << t.hook.to_string() << "\"," << t.sign << ','
         << to_decimal_string(t.average) << '\n';
    payload = os.str();
  } else {
    std::ostringstream os;
    os << "trace power " << n << " as signed hook averages at dim " << cfg.dim
       << ":\n";
    for (const Term& t : terms)
      os << (t.sign > 0 ? " +1" : " -1") << " * <sigma_[" << t.hook.to_string()
         << "]> = " << to_decimal_string(t.average) << '\n';
    os << "sum = " << to_decimal_string(total) << '\n';
    payload = os.str();
  }
  return emit_payload(payload, cfg, out, err);
}

int cmd_expand_charpoly(const RunConfig& cfg, std::ostream& out,
                        std::ostream& err) {
  const unsigned n = cfg.charpoly_n;
  if (!cfg.points.empty()) {
    std::vector<Rational> xs;
    for (const std::string& tok : split_csv(cfg.points))
      xs.push_back(parse_decimal_rational(tok));
    if (xs.size() != n) {
      err << "error: --charpoly " << n << " needs exactly " << n
          << " points, got " << xs.size() << '\n';
      return kExitUsage;
    }
    const Rational value = charpoly_product_average<Rational>(xs, cfg.dim);

    std::string payload;
    if (cfg.output == OutputFormat::json) {
      Json j;
      j["command"] = "expand";
      j["mode"] = "charpoly";
      j["n"] = n;
      j["dim"] = cfg.dim;
      Json pts = Json::array();
      for (const Rational& x : xs) pts.push_back(to_decimal_string(x));
      j["points"] = std::move(pts);
      j["value"] = to_decimal_string(value);
      j["value_approx"] = to_double(value);
      payload = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "average of det products over " << n << " points at dim "
         << cfg.dim << ": " << to_decimal_string(value) << " (= "
         << fmt(to_double(value)) << ")\n";
      payload = os.str();
    }
    return emit_payload(payload, cfg, out, err);
  }

  if (n != 2) {
    err << "error: the closed polynomial form exists for --charpoly 2; give "
           "--points for other counts\n";
    return kExitUsage;
  }
  const std::vector<Rational> coeffs = charpoly_pair_average(cfg.dim);
  std::ostringstream poly;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (k == 0) {
      poly << to_decimal_string(coeffs[0]);
      continue;
    }
    poly << " + ";
    if (coeffs[k] != 1) poly << to_decimal_string(coeffs[k]) << '*';
    poly << "(x1x2)";
    if (k > 1) poly << '^' << k;
  }

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "expand";
    j["mode"] = "charpoly";
    j["n"] = 2;
    j["dim"] = cfg.dim;
    Json cs = Json::array();
    for (const Rational& c : coeffs) cs.push_back(to_decimal_string(c));
    j["coefficients"] = std::move(cs);
    j["polynomial"] = poly.str();
    payload = j.dump(2) + "\n";
  } else {
    payload = poly.str() + "\n";
  }
  return emit_payload(payload, cfg, out, err);
}

// ------------------------------------------------------------ pfaffian ---

int cmd_pfaffian(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const int modes = (cfg.epsilon_dim != 0) + (cfg.epsilon_inverse_dim != 0) +
                    (cfg.matrix_a_dim != 0);
  if (modes != 1) {
    err << "error: give exactly one of --epsilon, --epsilon-inverse, "
           "--matrix-a\n";
    return kExitUsage;
  }

  if (cfg.epsilon_dim != 0) {
    const Rational pf = pfaffian(build_epsilon<Rational>(cfg.epsilon_dim));
    std::string payload;
    if (cfg.output == OutputFormat::json) {
      Json j;
      j["command"] = "pfaffian";
      j["matrix"] = "epsilon";
      j["dim"] = cfg.epsilon_dim;
      j["pfaffian"] = to_decimal_string(pf);
      payload = j.dump(2) + "\n";
    } else {
      payload = "pfaffian of the tridiagonal matrix, dim " +
                std::to_string(cfg.epsilon_dim) + ": " +
                to_decimal_string(pf) + "\n";
    }
    return emit_payload(payload, cfg, out, err);
  }

  if (cfg.epsilon_inverse_dim != 0) {
    const std::size_t m = cfg.epsilon_inverse_dim;
    std::vector<std::size_t> rows = cfg.rows;
    if (rows.empty()) {
      rows.resize(m);
      for (std::size_t k = 0; k < m; ++k) rows[k] = k + 1;
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
      if (rows[k] < 1 || rows[k] > m)
        throw std::invalid_argument("row index out of range");
      if (k && rows[k] <= rows[k - 1])
        throw std::invalid_argument("row indices must be strictly increasing");
    }
    const Rational pf =
        sub_pfaffian(build_epsilon_inverse<Rational>(m), rows);
    const int predicted = consecutive_pair_pfaffian_sign(rows, m);
    std::optional<bool> d_coeff;
    if (m <= DnPolynomial::kMaxVars) {
      std::vector<unsigned> cut;
      std::size_t next = 0;
      for (std::size_t k = 1; k <= m; ++k) {
        if (next < rows.size() && rows[next] == k)
          ++next;
        else
          cut.push_back(static_cast<unsigned>(k));
      }
      d_coeff = DnPolynomial(static_cast<unsigned>(m)).has_monomial(cut);
    }
    const bool agree = pf == Rational(predicted) &&
                       (!d_coeff || *d_coeff == (pf != 0));

    std::string payload;
    if (cfg.output == OutputFormat::json) {
      Json j;
      j["command"] = "pfaffian";
      j["matrix"] = "epsilon-inverse";
      j["dim"] = m;
      j["rows"] = rows;
      j["pfaffian"] = to_decimal_string(pf);
      j["predicted_sign"] = predicted;
      if (d_coeff) j["generating_coefficient"] = *d_coeff ? 1 : 0;
      j["agree"] = agree;
      payload = j.dump(2) + "\n";
    } else {
      std::ostringstream os;
      os << "sub-pfaffian of the staircase inverse, dim " << m << ", rows";
      for (std::size_t r : rows) os << ' ' << r;
      os << ": " << to_decimal_string(pf) << '\n';
      os << "consecutive-pair prediction: " << predicted << '\n';
      if (d_coeff)
        os << "generating-polynomial coefficient: " << (*d_coeff ? 1 : 0)
           << '\n';
      os << "agree: " << (agree ? "yes" : "NO") << '\n';
      payload = os.str();
    }
    const int emitted = emit_payload(payload, cfg, out, err);
    if (emitted != kExitOk) return emitted;
    return agree ? kExitOk : kExitRouteDisagreement;
  }

  const std::size_t m = cfg.matrix_a_dim;
  const double pf_float = pfaffian(build_A(m));
  RadicalScalar exact = normalization_constant(static_cast<unsigned>(m));
  const double exact_value = exact.to_double();
  const double rel =
      std::abs(pf_float - exact_value) / std::max(1.0, std::abs(exact_value));
  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "pfaffian";
    j["matrix"] = "moment";
    j["dim"] = m;
    j["pfaffian_float"] = pf_float;
    j["exact_form"] = radical_to_string(exact);
    j["exact_value"] = exact_value;
    j["relative_error"] = rel;
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "pfaffian of the moment matrix, dim " << m << ":\n";
    os << "  elimination (float): " << fmt(pf_float) << '\n';
    os << "  exact product: " << radical_to_string(exact) << " = "
       << fmt(exact_value) << '\n';
    os << "  relative difference: " << fmt(rel) << '\n';
    payload = os.str();
  }
  return emit_payload(payload, cfg, out, err);
}

// ------------------------------------------------------------- density ---

int cmd_density(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.dim < 2) {
    err << "error: --dim must be at least 2 for the density check\n";
    return kExitUsage;
  }
  if (cfg.samples < 100) {
    err << "error: --samples must be at least 100\n";
    return kExitUsage;
  }
  if (cfg.output == OutputFormat::csv) {
    err << "error: density reports as json or text\n";
    return kExitUsage;
  }
  DensityOptions grid;
  grid.bins_x = cfg.bins_x;
  grid.bins_y = cfg.bins_y;
  grid.band = cfg.band;
  grid.extent = cfg.extent;
  McOptions opts{cfg.samples, cfg.seed, cfg.threads, !cfg.serial};
  const DensityReport report = density_histogram_check(cfg.dim, grid, opts);

  std::string payload;
  if (cfg.output == OutputFormat::json) {
    Json j;
    j["command"] = "density";
    j["dim"] = report.dim;
    j["samples"] = report.n_samples;
    j["seed"] = report.seed;
    j["band"] = report.band;
    j["extent"] = report.extent;
    j["bins_x"] = cfg.bins_x;
    j["bins_y"] = cfg.bins_y;
    Json bins = Json::array();
    for (const DensityBin& b : report.bins) {
      Json e;
      e["x0"] = b.x0;
      e["x1"] = b.x1;
      e["y0"] = b.y0;
      e["y1"] = b.y1;
      e["expected"] = b.expected;
      e["observed"] = b.observed;
      e["z_score"] = b.z_score;
      bins.push_back(std::move(e));
    }
    j["bins"] = std::move(bins);
    j["pooled"] = {{"bins", report.pooled_bin_count},
                   {"expected", report.pooled_expected},
                   {"observed", report.pooled_observed},
                   {"z_score", report.pooled_z}};
    j["upper_half"] = {{"observed", report.upper_half_count},
                       {"expected", report.upper_half_expected},
                       {"z_score", report.total_z}};
    j["max_abs_z"] = report.max_abs_z;
    j["pass"] = report.pass;
    payload = j.dump(2) + "\n";
  } else {
    std::ostringstream os;
    os << "complex-eigenvalue density check, dim " << report.dim << ", "
       << report.n_samples << " samples, seed " << report.seed << '\n';
    os << "grid: |x| < " << fmt(report.extent) << ", " << fmt(report.band)
       << " <= y < " << fmt(report.extent) << ", " << cfg.bins_x << 'x'
       << cfg.bins_y << " bins\n";
    for (const DensityBin& b : report.bins)
      os << "  bin x[" << fmt(b.x0) << ',' << fmt(b.x1) << ") y[" << fmt(b.y0)
         << ',' << fmt(b.y1) << "): expected " << fmt(b.expected)
         << " observed " << b.observed << " z " << fmt(b.z_score) << '\n';
    if (report.pooled_bin_count)
      os << "  pooled " << report.pooled_bin_count << " small bins: expected "
         << fmt(report.pooled_expected) << " observed "
         << report.pooled_observed << " z " << fmt(report.pooled_z) << '\n';
    os << "upper-half count: observed " << report.upper_half_count
       << " expected " << fmt(report.upper_half_expected) << " z "
       << fmt(report.total_z) << '\n';
    os << "max |z| " << fmt(report.max_abs_z) << " -> "
       << (report.pass ? "pass" : "FAIL") << '\n';
    payload = os.str();
  }

  const int emitted = emit_payload(payload, cfg, out, err);
  if (emitted != kExitOk) return emitted;
  return report.pass ? kExitOk : kExitStatisticalFailure;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{
      "Schur-function averages over real Gaussian matrices: exact closed "
      "form, Pfaffian construction, and Monte Carlo verification"};
  app.name("schur_ginibre");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string partition_str;
  std::string method_str;
  std::string output_str;
  std::string out_path;
  std::string rows_str;

  const std::vector<std::string> methods = {"closed", "pfaffian", "both"};
  const std::vector<std::string> formats = {"json", "csv", "text"};

  CLI::App* avg = app.add_subcommand(
      "avg", "Exact average of one Schur function over the ensemble");
  avg->add_option("--partition", partition_str,
                  "Comma-separated parts, e.g. 4,2,2; empty or 0 for the "
                  "empty partition")
      ->required();
  avg->add_option("--dim", cfg.dim, "Matrix dimension N")
      ->required()
      ->check(CLI::PositiveNumber);
  avg->add_option("--method", method_str, "closed, pfaffian, or both")
      ->check(CLI::IsMember(methods));
  avg->add_option("--embed-dim", cfg.embed_dim,
                  "Even embedding dimension override for the Pfaffian route");
  avg->add_option("--output", output_str, "json, csv, or text")
      ->check(CLI::IsMember(formats));
  avg->add_option("--out", out_path, "Write the report to this file");

  CLI::App* table = app.add_subcommand(
      "table", "Sweep averages over all partitions within bounds");
  table->add_option("--max-weight", cfg.max_weight, "Largest partition weight")
      ->required()
      ->check(CLI::Range(0u, 40u));
  table->add_option("--dim", cfg.dim, "Matrix dimension N")
      ->required()
      ->check(CLI::PositiveNumber);
  table->add_option("--max-length", cfg.max_length,
                    "Length bound (default: dim)");
  table->add_option("--max-part", cfg.max_part,
                    "Part bound (default: max weight)");
  table->add_option("--method", method_str,
                    "closed (default), or both to cross-check routes")
      ->check(CLI::IsMember(methods));
  table->add_option("--output", output_str, "json, csv (default), or text")
      ->check(CLI::IsMember(formats));
  table->add_option("--out", out_path, "Write the report to this file");

  CLI::App* verify = app.add_subcommand(
      "mc-verify",
      "Run the Monte Carlo verification matrix against the exact values");
  verify->add_option("--samples", cfg.samples, "Samples per statistic")
      ->capture_default_str();
  verify->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  verify->add_option("--threads", cfg.threads, "Worker cap (0 = default)");
  verify->add_flag("--serial", cfg.serial, "Force the serial sampling path");
  verify->add_option("--stats", cfg.stats_filter,
                     "Run only statistics whose id contains this substring");
  verify->add_flag("--inject-error", cfg.inject_error,
                   "Self-test: corrupt one target; the run must fail");
  verify->add_option("--output", output_str, "json (default) or text")
      ->check(CLI::IsMember(formats));
  verify->add_option("--out", out_path, "Write the report to this file");

  CLI::App* expand = app.add_subcommand(
      "expand", "Hook expansions of trace powers and det-product averages");
  expand->add_option("--power-sum", cfg.power_sum,
                     "Expand the trace power t_n into signed hook averages")
      ->check(CLI::PositiveNumber);
  expand->add_option("--charpoly", cfg.charpoly_n,
                     "Average of a product of n characteristic polynomials")
      ->check(CLI::PositiveNumber);
  expand->add_option("--points", cfg.points,
                     "Comma-separated evaluation points (exact decimals or "
                     "fractions)");
  expand->add_option("--dim", cfg.dim, "Matrix dimension N")
      ->required()
      ->check(CLI::PositiveNumber);
  expand->add_option("--output", output_str, "json, csv, or text")
      ->check(CLI::IsMember(formats));
  expand->add_option("--out", out_path, "Write the report to this file");

  CLI::App* pfaff = app.add_subcommand(
      "pfaffian", "Inspect the structural matrices and their Pfaffians");
  pfaff->add_option("--epsilon", cfg.epsilon_dim,
                    "Exact Pfaffian of the tridiagonal matrix of this even "
                    "dimension");
  pfaff->add_option("--epsilon-inverse", cfg.epsilon_inverse_dim,
                    "Sub-Pfaffian of the staircase inverse of this even "
                    "dimension");
  pfaff->add_option("--rows", rows_str,
                    "Retained 1-based rows for --epsilon-inverse, e.g. "
                    "1,2,5,6 (default: all)");
  pfaff->add_option("--matrix-a", cfg.matrix_a_dim,
                    "Floating Pfaffian of the moment matrix vs the exact "
                    "weight product");
  pfaff->add_option("--output", output_str, "json or text")
      ->check(CLI::IsMember(formats));
  pfaff->add_option("--out", out_path, "Write the report to this file");

  CLI::App* density = app.add_subcommand(
      "density",
      "Histogram complex eigenvalues against the expected density");
  density->add_option("--dim", cfg.dim, "Matrix dimension N (>= 2)")
      ->required()
      ->check(CLI::PositiveNumber);
  density->add_option("--samples", cfg.samples, "Matrix samples")
      ->capture_default_str();
  density->add_option("--seed", cfg.seed, "Base seed")->capture_default_str();
  density->add_option("--threads", cfg.threads, "Worker cap (0 = default)");
  density->add_flag("--serial", cfg.serial, "Force the serial sampling path");
  density->add_option("--band", cfg.band,
                      "Excluded strip above the real axis")
      ->capture_default_str();
  density->add_option("--bins-x", cfg.bins_x, "Bins along the real axis")
      ->capture_default_str();
  density->add_option("--bins-y", cfg.bins_y, "Bins along the imaginary axis")
      ->capture_default_str();
  density->add_option("--extent", cfg.extent,
                      "Grid half-width (0 = sqrt(dim) + 1.5)");
  density->add_option("--output", output_str, "json (default) or text")
      ->check(CLI::IsMember(formats));
  density->add_option("--out", out_path, "Write the report to this file");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  auto parse_method = [&](const std::string& fallback) {
    const std::string& s = method_str.empty() ? fallback : method_str;
    return s == "closed" ? Method::closed
         : s == "pfaffian" ? Method::pfaffian
                           : Method::both;
  };
  auto parse_format = [&](const std::string& fallback) {
    const std::string& s = output_str.empty() ? fallback : output_str;
    return s == "json" ? OutputFormat::json
         : s == "csv" ? OutputFormat::csv
                      : OutputFormat::text;
  };
  if (!out_path.empty()) cfg.output_path = out_path;

  try {
    if (app.got_subcommand(avg)) {
      cfg.command = Command::avg;
      cfg.partition = Partition::parse(partition_str);
      cfg.method = parse_method("both");
      cfg.output = parse_format("text");
      return cmd_avg(cfg, out, err);
    }
    if (app.got_subcommand(table)) {
      cfg.command = Command::table;
      cfg.method = parse_method("closed");
      cfg.output = parse_format("csv");
      return cmd_table(cfg, out, err);
    }
    if (app.got_subcommand(verify)) {
      cfg.command = Command::mc_verify;
      cfg.output = parse_format("json");
      return cmd_mc_verify(cfg, out, err);
    }
    if (app.got_subcommand(expand)) {
      cfg.command = Command::expand;
      cfg.output = parse_format("text");
      if ((cfg.power_sum != 0) == (cfg.charpoly_n != 0)) {
        err << "error: give exactly one of --power-sum or --charpoly\n";
        return kExitUsage;
      }
      return cfg.power_sum ? cmd_expand_power_sum(cfg, out, err)
                           : cmd_expand_charpoly(cfg, out, err);
    }
    if (app.got_subcommand(pfaff)) {
      cfg.command = Command::pfaffian;
      cfg.output = parse_format("text");
      if (!rows_str.empty()) cfg.rows = parse_index_list(rows_str);
      return cmd_pfaffian(cfg, out, err);
    }
    cfg.command = Command::density;
    cfg.output = parse_format("json");
    return cmd_density(cfg, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace sg
