#include "core/serialize.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace fpl {

std::string format_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

namespace {

// JSON number: non-finite values become null.
std::string jnum(double x) {
  return std::isfinite(x) ? format_g17(x) : std::string("null");
}

std::string jstr(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string jbool(bool b) { return b ? "true" : "false"; }

std::string coord_json(const DomainGrid& g, int k) {
  const auto& q = g.interior_coord(k);
  std::string out = "[" + jnum(q[0]);
  if (g.dim() == 2) out += "," + jnum(q[1]);
  return out + "]";
}

std::string values_json(const ScalarField& f) {
  std::string out = "[";
  for (int k = 0; k < f.size(); ++k) {
    if (k) out += ",";
    out += jnum(f[k]);
  }
  return out + "]";
}

std::string anchors_json(const ProblemSpec& spec) {
  const DomainGrid& g = *spec.grid;
  std::string out = "{";
  if (spec.variant == Variant::P1) {
    out += "\"x0\":{\"index\":" + std::to_string(spec.anchor0) +
           ",\"coord\":" + coord_json(g, spec.anchor0) + "}";
  } else if (spec.variant == Variant::P2) {
    out += "\"x1\":{\"index\":" + std::to_string(spec.anchor0) +
           ",\"coord\":" + coord_json(g, spec.anchor0) + "},";
    out += "\"x2\":{\"index\":" + std::to_string(spec.anchor1) +
           ",\"coord\":" + coord_json(g, spec.anchor1) + "}";
  }
  return out + "}";
}

std::string problem_json(const ProblemSpec& spec) {
  std::string out = "{";
  out += "\"variant\":" + jstr(variant_name(spec.variant));
  out += ",\"s\":" + jnum(spec.s);
  out += ",\"t\":" + jnum(spec.t);
  out += ",\"theta\":" + jnum(spec.theta);
  out += ",\"p\":" + jnum(spec.p);
  out += ",\"alpha\":" + jnum(spec.alpha());
  out += ",\"beta\":" + jnum(spec.beta());
  out += ",\"anchors\":" + anchors_json(spec);
  return out + "}";
}

std::string record_json(const DomainGrid& g, const SweepRecord& r) {
  std::string out = "{";
  out += "\"p\":" + jnum(r.p);
  out += ",\"lambda_root\":" + jnum(r.lambda_root);
  out += ",\"log_lambda\":" + jnum(r.log_lambda);
  out += ",\"holder_u\":" + jnum(r.holder_u);
  out += ",\"holder_v\":" + jnum(r.holder_v);
  out += ",\"s_infty_norm\":" + jnum(r.s_infty_norm);
  out += ",\"constraint\":" + jnum(r.constraint);
  out += ",\"argmax_u\":{\"index\":" + std::to_string(r.argmax_u) +
         ",\"coord\":" + coord_json(g, r.argmax_u) + "}";
  out += ",\"argmax_v\":{\"index\":" + std::to_string(r.argmax_v) +
         ",\"coord\":" + coord_json(g, r.argmax_v) + "}";
  out += ",\"iterations\":" + std::to_string(r.iterations);
  out += ",\"converged\":" + jbool(r.converged);
  out += ",\"weak_residual\":" + jnum(r.weak_residual);
  out += ",\"cone_q_root\":" + jnum(r.cone_q_root);
  out += ",\"cone_log_q\":" + jnum(r.cone_log_q);
  return out + "}";
}

std::string check_json(const CheckResult& c) {
  return "{\"name\":" + jstr(c.name) + ",\"pass\":" + jbool(c.pass) +
         ",\"gap\":" + jnum(c.gap) + ",\"detail\":" + jstr(c.detail) + "}";
}

}  // namespace

std::string grid_json(const DomainGrid& g) {
  std::string out = "{";
  out += "\"dim\":" + std::to_string(g.dim());
  out += ",\"bounds\":[" + jnum(g.bounds()[0]);
  if (g.dim() == 2) out += "," + jnum(g.bounds()[1]);
  out += "," + jnum(g.bounds()[2]);
  if (g.dim() == 2) out += "," + jnum(g.bounds()[3]);
  out += "]";
  out += ",\"n\":" + std::to_string(g.cells_per_axis());
  out += ",\"mask_rule\":" + jstr(mask_rule_name(g.mask_rule()));
  out += ",\"collar_width\":" + jnum(g.collar_width());
  out += ",\"h\":" + jnum(g.spacing());
  out += ",\"interior_count\":" + std::to_string(g.interior_count());
  out += ",\"inradius\":" + jnum(g.inradius());
  return out + "}\n";
}

std::string field_csv(const ScalarField& f) {
  const DomainGrid& g = f.grid();
  std::string out = g.dim() == 1 ? "x,value\n" : "x,y,value\n";
  for (int k = 0; k < f.size(); ++k) {
    const auto& q = g.interior_coord(k);
    out += format_g17(q[0]);
    if (g.dim() == 2) out += "," + format_g17(q[1]);
    out += "," + format_g17(f[k]) + "\n";
  }
  return out;
}

std::string eigenpair_json(const ProblemSpec& spec, const EigenPair& pair) {
  std::string out = "{";
  out += "\"problem\":" + problem_json(spec);
  out += ",\"lambda\":{\"log\":" + jnum(pair.lambda.log_value) +
         ",\"value\":" + jnum(pair.lambda.value()) + "}";
  out += ",\"lambda_root\":" + jnum(pair.lambda_root);
  out += ",\"numerator\":{\"log_u_part\":" + jnum(pair.numerator_u.log_value) +
         ",\"log_v_part\":" + jnum(pair.numerator_v.log_value) + "}";
  out += ",\"denominator\":" + jnum(pair.denom.value());
  out += ",\"diagnostics\":{";
  out += "\"iterations\":" + std::to_string(pair.iterations);
  out += ",\"converged\":" + jbool(pair.converged);
  out += ",\"diverged\":" + jbool(pair.diverged);
  out += ",\"weak_residual\":" + jnum(pair.weak_residual);
  out += ",\"final_step\":" + jnum(pair.final_step);
  out += "}";
  out += ",\"u\":" + values_json(pair.u);
  out += ",\"v\":" + values_json(pair.v);
  return out + "}\n";
}

std::string sweep_csv(const SweepReport& report) {
  std::string out = "p,lambda_root,holder_u,holder_v,constraint\n";
  for (const SweepRecord& r : report.records) {
    out += format_g17(r.p) + "," + format_g17(r.lambda_root) + "," +
           format_g17(r.holder_u) + "," + format_g17(r.holder_v) + "," +
           format_g17(r.constraint) + "\n";
  }
  return out;
}

std::string sweep_json(const SweepReport& report) {
  const DomainGrid& g = *report.spec.grid;
  std::string out = "{";
  out += "\"problem\":" + problem_json(report.spec);
  out += ",\"limit\":" + jnum(report.limit);
  out += ",\"records\":[";
  for (size_t i = 0; i < report.records.size(); ++i) {
    if (i) out += ",";
    out += record_json(g, report.records[i]);
  }
  out += "]";
  if (!report.checks.empty()) {
    out += ",\"checks\":[";
    for (size_t i = 0; i < report.checks.size(); ++i) {
      if (i) out += ",";
      out += check_json(report.checks[i]);
    }
    out += "]";
  }
  return out + "}\n";
}

std::string checks_json(const SweepReport& report, const CheckOptions& opts) {
  std::string out = "{";
  out += "\"limit\":" + jnum(report.limit);
  out += ",\"tolerances\":{\"limit_tol\":" + jnum(opts.limit_tol) +
         ",\"constraint_tol\":" + jnum(opts.constraint_tol) +
         ",\"bound_tol\":" + jnum(opts.bound_tol) + "}";
  bool all = true;
  for (const CheckResult& c : report.checks) all = all && c.pass;
  out += ",\"all_pass\":" + jbool(all);
  out += ",\"checks\":[";
  for (size_t i = 0; i < report.checks.size(); ++i) {
    if (i) out += ",";
    out += check_json(report.checks[i]);
  }
  out += "]";
  return out + "}\n";
}

std::string gnuplot_lambda(const SweepReport& report) {
  std::string out = "# p lambda_root\n";
  for (const SweepRecord& r : report.records) {
    out += format_g17(r.p) + " " + format_g17(r.lambda_root) + "\n";
  }
  return out;
}

std::string gnuplot_holder(const SweepReport& report) {
  std::string out = "# p holder_max\n";
  for (const SweepRecord& r : report.records) {
    out += format_g17(r.p) + " " +
           format_g17(std::max(r.holder_u, r.holder_v)) + "\n";
  }
  return out;
}

std::string residual_csv(const DomainGrid& g, const ResidualReport& rep) {
  std::string out = g.dim() == 1 ? "x,residual\n" : "x,y,residual\n";
  for (size_t i = 0; i < rep.nodes.size(); ++i) {
    const auto& q = g.interior_coord(rep.nodes[i]);
    out += format_g17(q[0]);
    if (g.dim() == 2) out += "," + format_g17(q[1]);
    out += "," + format_g17(rep.residual[i]) + "\n";
  }
  return out;
}

std::string residual_json(const ResidualReport& rep) {
  std::string out = "{";
  out += "\"field\":\"";
  out += rep.field_id;
  out += "\"";
  out += ",\"sign_convention\":" + jstr(sign_convention_name(rep.sign));
  out += ",\"layer_k\":" + std::to_string(rep.layer_k);
  out += ",\"count\":" + std::to_string(rep.nodes.size());
  out += ",\"sup_norm\":" + jnum(rep.sup_norm);
  return out + "}\n";
}

}  // namespace fpl
