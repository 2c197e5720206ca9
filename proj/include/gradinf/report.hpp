#pragma once

// Command dispatch and report serialization for the gradinf tool.

#include "gradinf/classifier.hpp"
#include "gradinf/normalize.hpp"
#include "gradinf/parser.hpp"
#include "gradinf/puiseux.hpp"
#include "gradinf/resultant.hpp"
#include "gradinf/witness.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace gradinf {

inline constexpr const char* kSchemaVersion = "1";

enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitPrecondition = 2, kExitCrossCheck = 3 };

struct Command {
  std::string verb;
  std::string poly;
  std::string lambda;  // empty: generic where allowed
  std::string curve;
  std::string vars;    // empty: x,y
  bool json = false;
  bool not_in_kinf = false;  // caller asserts lambda0 is outside K_inf (witness, more than two variables)
};

struct CommandResult {
  int exit_code = kExitOk;
  std::string out;
  std::string err;
};

using Json = nlohmann::json;

namespace report {

inline Json exponent(const ExtRational& e) {
  if (e.is_neg_infinity()) return Json{{"type", "neg_infinity"}};
  return Json{{"type", "rational"}, {"value", e.value().get_str()}};
}

inline Json lambda(const LambdaPoint& p) {
  switch (p.kind) {
    case LambdaPoint::Kind::Rational: return Json{{"type", "rational"}, {"value", p.value.get_str()}};
    case LambdaPoint::Kind::Algebraic: return Json{{"type", "root"}, {"modulus", p.modulus.to_string("t")}};
    case LambdaPoint::Kind::Generic: return Json{{"type", "generic"}};
  }
  return Json();
}

inline Json value_set(const ValueSet& s) { return Json(s.to_strings()); }

inline Json record(const ExponentRecord& r) {
  return Json{{"lambda", lambda(r.lambda)},
              {"value", exponent(r.value)},
              {"case", to_string(r.which)},
              {"in_Lambda", r.in_Lambda},
              {"tilde_equal", r.tilde_equal}};
}

inline const char* lp_case(LpCase c) {
  switch (c) {
    case LpCase::I: return "I";
    case LpCase::II: return "II";
    case LpCase::III: return "III";
    case LpCase::IV: return "IV";
  }
  return "?";
}

inline Json fiber(const FiberRecord& r) {
  return Json{{"lambda", lambda(r.lambda)}, {"value", exponent(r.value)}, {"case", lp_case(r.which)}};
}

inline Json comparison(const Comparison& c) {
  return Json{{"lambda", lambda(c.lambda)},
              {"near", exponent(c.near)},
              {"on_fiber", exponent(c.on_fiber)},
              {"relation", to_string(c.relation)},
              {"reason", c.reason}};
}

inline Json pair(const PairRecord& p) {
  return Json{{"lambda", lambda(p.lambda)},
              {"on_critical", exponent(p.on_critical)},
              {"on_fiber", exponent(p.on_fiber)},
              {"pair", exponent(p.pair)}};
}

inline Json certificate(const NormalizationCert& c, const QPoly& g) {
  return Json{{"shear", c.shear.get_str()},
              {"scale", c.scale.get_str()},
              {"lambda_map", c.lambda_map()},
              {"normal_form", g.to_string()}};
}

inline Json contacts(const ContactMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.size(); ++j) row.push_back(i == j ? Json(nullptr) : exponent(m(i, j)));
    rows.push_back(row);
  }
  return rows;
}

/// Oracle bundle, classifier comparison included. `agrees` is false when any
/// identity fails or the two computation paths disagree.
inline Json oracle(const OracleBundle& b, const std::optional<ExponentRecord>& classifier, bool& agrees) {
  Json j{{"lambda", lambda(b.lambda)},
         {"D", b.D},
         {"contact_matrix", contacts(b.contacts)},
         {"prop22", Json{{"lhs", exponent(b.prop22.lhs)}, {"rhs", exponent(b.prop22.rhs)}, {"equal", b.prop22.equal}}},
         {"lemma31", Json{{"on_fiber", exponent(b.lemma31.on_fiber)}, {"on_critical", exponent(b.lemma31.on_critical)}}},
         {"cor36", b.cor36 ? exponent(*b.cor36) : Json(nullptr)},
         {"lemmad2", b.lemmad2}};
  bool ok = b.prop22.equal && b.lemmad2;
  if (classifier) {
    j["classifier_exponent"] = exponent(classifier->value);
    if (b.cor36) ok = ok && *b.cor36 == classifier->value;
    ok = ok && (b.cor36.has_value() == classifier->in_Lambda);
  }
  j["agrees"] = ok;
  agrees = agrees && ok;
  return j;
}

}  // namespace report

namespace detail {

struct PlaneInput {
  QPoly f;
  Normalized nf;
};

inline PlaneInput plane_input(const Command& cmd) {
  std::vector<std::string> vars = cmd.vars.empty() ? std::vector<std::string>{"x", "y"} : parse_vars(cmd.vars);
  if (vars.size() != 2) throw PreconditionError("this command needs a polynomial in two variables");
  QPoly f = parse_poly(cmd.poly, vars);
  if (vars != std::vector<std::string>{"x", "y"}) f = as_plane(f, vars);
  return PlaneInput{f, normalize(f)};
}

inline LambdaPoint to_normalized(const LambdaPoint& p, const NormalizationCert& c) {
  return p.transported(Rational(1) / c.scale);
}

inline std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i];
  return s;
}


/// Oracle bundles at the points of Lambda of the normal form, with lambda
/// relabelled in the input's coordinates.
inline Json oracle_summary(const Classifier& c, const NormalizationCert& cert, bool& agrees) {
  Json arr = Json::array();
  if (c.n() < 2) return arr;
  for (const auto& pt : lambda_set(c)) {
    auto bundles = oracle_at(c.f(), pt);
    auto records = exponent_at(c, pt);
    for (std::size_t k = 0; k < bundles.size(); ++k) {
      bundles[k].lambda = bundles[k].lambda.transported(cert.scale);
      records[k].lambda = records[k].lambda.transported(cert.scale);
      arr.push_back(report::oracle(bundles[k], records[k], agrees));
    }
  }
  return arr;
}

inline std::pair<Json, std::string> run_analyze(const Command& cmd) {
  auto in = plane_input(cmd);
  auto rep = analyze(in.f);
  Classifier c(in.nf.g);
  bool agrees = true;
  Json oracle = oracle_summary(c, in.nf.cert, agrees);
  if (!agrees) throw CrossCheckError("the Puiseux oracle disagrees with the resultant classifier");

  Json j;
  j["normalization"] = report::certificate(rep.cert, rep.normalized);
  j["N"] = rep.N;
  j["deg_u_Q0"] = report::exponent(rep.deg_u_Q0);
  Json lam = Json::array();
  for (const auto& p : rep.lambda_set) lam.push_back(p.to_string());
  j["lambda_set"] = lam;
  j["generic"] = report::record(rep.generic);
  Json special = Json::array();
  for (const auto& r : rep.special) special.push_back(report::record(r));
  j["special"] = special;
  Json cmps = Json::array();
  for (const auto& r : rep.comparisons) cmps.push_back(report::comparison(r));
  j["comparisons"] = cmps;
  Json pairs = Json::array();
  for (const auto& r : rep.pairs) pairs.push_back(report::pair(r));
  j["pairs"] = pairs;
  j["kinf"] = report::value_set(rep.kinf);
  j["fedorjuk"] = report::value_set(rep.fedorjuk);
  j["affine_critical"] = report::value_set(rep.affine_critical);
  j["bifurcation"] = report::value_set(rep.bifurcation);
  j["global_exponent"] = Json{{"determined", rep.global.determined},
                              {"value", rep.global.determined ? report::exponent(rep.global.value) : Json(nullptr)}};
  j["oracle"] = oracle;

  std::ostringstream t;
  t << "f = " << rep.input.to_string() << "\n";
  t << "normal form: " << rep.normalized.to_string() << "  (shear " << rep.cert.shear.get_str() << ", "
    << rep.cert.lambda_map() << ")\n";
  t << "N = " << rep.N << ", deg_u Q_0 = " << rep.deg_u_Q0.to_string() << "\n";
  t << "Λ(f) = {" << join(ValueSet::from_points(rep.lambda_set).to_strings()) << "}\n";
  t << "𝓛∞,λ(f) = " << rep.generic.value.to_string() << " for λ ∉ Λ(f)  [" << to_string(rep.generic.which) << "]\n";
  for (const auto& r : rep.special)
    t << "𝓛∞,λ(f) = " << r.value.to_string() << " at λ = " << r.lambda.to_string() << "  [" << to_string(r.which)
      << "]\n";
  for (const auto& r : rep.comparisons)
    t << "near " << r.lambda.to_string() << ": " << r.near.to_string() << " vs on-fiber " << r.on_fiber.to_string()
      << " (" << to_string(r.relation) << ")\n";
  t << "K∞(f) = {" << join(rep.kinf.to_strings()) << "}\n";
  t << "Fedorjuk set = {" << join(rep.fedorjuk.to_strings()) << "}\n";
  t << "critical values = {" << join(rep.affine_critical.to_strings()) << "}\n";
  t << "bifurcation set = {" << join(rep.bifurcation.to_strings()) << "}\n";
  t << "𝓛∞(∇f) " << (rep.global.determined ? "= " + rep.global.value.to_string() : std::string(">= -1")) << "\n";
  t << "oracle cross-check: " << (oracle.empty() ? "not applicable" : "agrees at " + std::to_string(oracle.size()) + " point(s)")
    << "\n";
  return {j, t.str()};
}

inline LambdaPoint lambda_arg(const Command& cmd) {
  return cmd.lambda.empty() ? LambdaPoint::generic() : parse_lambda(cmd.lambda);
}

inline std::pair<Json, std::string> run_exponent(const Command& cmd) {
  auto in = plane_input(cmd);
  Classifier c(in.nf.g);
  LambdaPoint at = lambda_arg(cmd);
  std::vector<ExponentRecord> recs;
  if (at.is_generic()) {
    recs.push_back(generic_exponent(c));
  } else {
    recs = exponent_at(c, to_normalized(at, in.nf.cert));
    for (auto& r : recs) r.lambda = r.lambda.transported(in.nf.cert.scale);
  }
  Json arr = Json::array();
  std::ostringstream t;
  for (const auto& r : recs) {
    arr.push_back(report::record(r));
    t << "𝓛∞," << r.lambda.to_string() << "(f) = " << r.value.to_string() << "  [" << to_string(r.which) << "]"
      << (r.in_Lambda ? "  λ ∈ Λ(f)" : "") << "\n";
  }
  return {Json{{"records", arr}}, t.str()};
}

inline std::pair<Json, std::string> run_fiber(const Command& cmd) {
  auto in = plane_input(cmd);
  Classifier c(in.nf.g);
  auto recs = fiber_exponent_at(c, to_normalized(lambda_arg(cmd), in.nf.cert));
  Json arr = Json::array();
  std::ostringstream t;
  for (auto& r : recs) {
    r.lambda = r.lambda.transported(in.nf.cert.scale);
    arr.push_back(report::fiber(r));
    t << "𝓛∞(∇f|S_" << r.lambda.to_string() << ") = " << r.value.to_string() << "  [case " << report::lp_case(r.which)
      << "]\n";
  }
  return {Json{{"records", arr}}, t.str()};
}

inline std::pair<Json, std::string> run_compare(const Command& cmd) {
  auto in = plane_input(cmd);
  Classifier c(in.nf.g);
  auto recs = compare_at(c, to_normalized(lambda_arg(cmd), in.nf.cert));
  Json arr = Json::array();
  std::ostringstream t;
  for (auto& r : recs) {
    r.lambda = r.lambda.transported(in.nf.cert.scale);
    arr.push_back(report::comparison(r));
    t << "λ = " << r.lambda.to_string() << ": 𝓛∞,λ(f) = " << r.near.to_string() << ", 𝓛∞(∇f|S_λ) = "
      << r.on_fiber.to_string() << " (" << to_string(r.relation) << "; " << r.reason << ")\n";
  }
  return {Json{{"records", arr}}, t.str()};
}

inline std::pair<Json, std::string> run_oracle(const Command& cmd) {
  auto in = plane_input(cmd);
  Classifier c(in.nf.g);
  LambdaPoint at = to_normalized(lambda_arg(cmd), in.nf.cert);
  auto bundles = oracle_at(c.f(), at);
  auto records = exponent_at(c, at);
  bool agrees = true;
  Json arr = Json::array();
  std::ostringstream t;
  for (std::size_t k = 0; k < bundles.size(); ++k) {
    bundles[k].lambda = bundles[k].lambda.transported(in.nf.cert.scale);
    records[k].lambda = records[k].lambda.transported(in.nf.cert.scale);
    arr.push_back(report::oracle(bundles[k], records[k], agrees));
    const auto& b = bundles[k];
    t << "λ = " << b.lambda.to_string() << ", D = " << b.D << "\n";
    t << "  gradient/critical-curve identity: " << b.prop22.lhs.to_string() << " = " << b.prop22.rhs.to_string()
      << (b.prop22.equal ? "  holds" : "  FAILS") << "\n";
    t << "  on fiber " << b.lemma31.on_fiber.to_string() << ", on critical curve " << b.lemma31.on_critical.to_string()
      << "\n";
    t << "  contact formula exponent: " << (b.cor36 ? b.cor36->to_string() : std::string("n/a (λ ∉ Λ(f))")) << "\n";
    t << "  branch/critical contact matching: " << (b.lemmad2 ? "holds" : "FAILS") << "\n";
  }
  if (!agrees) throw CrossCheckError("the Puiseux oracle disagrees with the resultant classifier");
  return {Json{{"records", arr}}, t.str()};
}

inline std::pair<Json, std::string> run_witness(const Command& cmd) {
  std::vector<std::string> vars = cmd.vars.empty() ? std::vector<std::string>{"x", "y"} : parse_vars(cmd.vars);
  QPoly f = parse_poly(cmd.poly, vars);
  if (cmd.curve.empty()) throw ParseError("witness needs --curve", 1);
  auto phi = parse_curve(cmd.curve);
  LambdaPoint at = cmd.lambda.empty() ? LambdaPoint::rational(Rational(0)) : parse_lambda(cmd.lambda);
  if (!at.is_rational()) throw PreconditionError("witness evaluation needs a rational lambda");
  auto w = witness(f, vars, phi, at.value);
  Json j{{"deg_phi", report::exponent(w.deg_phi)},
         {"deg_fiber", report::exponent(w.deg_fiber)},
         {"deg_grad", report::exponent(w.deg_grad)},
         {"ratio", w.ratio ? report::exponent(*w.ratio) : Json(nullptr)},
         {"valid", w.valid}};
  std::ostringstream t;
  t << "deg Φ = " << w.deg_phi.to_string() << ", deg (f-λ)∘Φ = " << w.deg_fiber.to_string() << ", deg ∇f∘Φ = "
    << w.deg_grad.to_string() << "\n";
  t << "ratio = " << (w.ratio ? w.ratio->to_string() : std::string("undefined")) << ", "
    << (w.valid ? "valid" : "not a valid witness") << "\n";
  if (w.valid) {
    auto p = prop621_check(f, vars, phi, at.value, !cmd.not_in_kinf);
    j["prop621"] = Json{{"applicable", p.applicable},
                        {"concluded", p.applicable ? report::exponent(p.concluded) : Json(nullptr)},
                        {"reason", p.reason}};
    t << (p.applicable ? "concluded 𝓛∞,λ(f) = -1" : "no conclusion") << " (" << p.reason << ")\n";
  }
  return {j, t.str()};
}

inline std::pair<Json, std::string> run_resultant(const Command& cmd) {
  auto in = plane_input(cmd);
  auto prof = resultant_profile(in.nf.g);
  Json q = Json::array();
  std::ostringstream t;
  t << "normal form: " << in.nf.g.to_string() << "\nN = " << prof.N << "\n";
  for (std::size_t i = 0; i < prof.Q.size(); ++i) {
    q.push_back(prof.Q[i].to_string());
    t << "Q_" << i << " = " << prof.Q[i].to_string() << "\n";
  }
  Json j{{"normalization", report::certificate(in.nf.cert, in.nf.g)},
         {"N", prof.N},
         {"Q", q},
         {"full", prof.full.to_string()}};
  return {j, t.str()};
}

}  // namespace detail

inline const std::vector<std::string>& verbs() {
  static const std::vector<std::string> v{"analyze", "exponent", "fiber", "compare", "oracle", "witness", "resultant"};
  return v;
}

/// Runs one command; never throws.
inline CommandResult run_command(const Command& cmd) {
  CommandResult res;
  Json input{{"poly", cmd.poly}};
  if (!cmd.lambda.empty()) input["lambda"] = cmd.lambda;
  if (!cmd.vars.empty()) input["vars"] = cmd.vars;
  if (!cmd.curve.empty()) input["curve"] = cmd.curve;
  auto fail = [&](int code, const std::string& kind, const std::string& msg) {
    res.exit_code = code;
    res.err = "error: " + msg + "\n";
    if (cmd.json) {
      Json doc{{"schema_version", kSchemaVersion},
               {"command", cmd.verb},
               {"input", input},
               {"error", Json{{"kind", kind}, {"message", msg}}}};
      res.out = doc.dump(2) + "\n";
    }
  };
  try {
    std::pair<Json, std::string> r;
    if (cmd.verb == "analyze")
      r = detail::run_analyze(cmd);
    else if (cmd.verb == "exponent")
      r = detail::run_exponent(cmd);
    else if (cmd.verb == "fiber")
      r = detail::run_fiber(cmd);
    else if (cmd.verb == "compare")
      r = detail::run_compare(cmd);
    else if (cmd.verb == "oracle")
      r = detail::run_oracle(cmd);
    else if (cmd.verb == "witness")
      r = detail::run_witness(cmd);
    else if (cmd.verb == "resultant")
      r = detail::run_resultant(cmd);
    else
      throw ParseError("unknown command '" + cmd.verb + "'", 1);
    if (cmd.json) {
      Json doc = r.first;
      doc["schema_version"] = kSchemaVersion;
      doc["command"] = cmd.verb;
      doc["input"] = input;
      res.out = doc.dump(2) + "\n";
    } else {
      res.out = r.second;
    }
  } catch (const ParseError& e) {
    fail(kExitUsage, "parse", e.what());
  } catch (const PreconditionError& e) {
    fail(kExitPrecondition, "precondition", e.what());
  } catch (const CrossCheckError& e) {
    fail(kExitCrossCheck, "cross_check", e.what());
  } catch (const std::exception& e) {
    fail(kExitCrossCheck, "internal", e.what());
  }
  return res;
}

}  // namespace gradinf
