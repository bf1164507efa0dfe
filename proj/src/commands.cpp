#include "pcf/commands.hpp"

#include <CLI11.hpp>

#include <sstream>

#include "pcf/drazin.hpp"
#include "pcf/pcf.hpp"
#include "pcf/polymat.hpp"
#include "pcf/spectra.hpp"

namespace pcf::cli {

namespace {

TolerancePolicy policy_for(const MatrixDocument& doc, const GlobalOptions& opt) {
  TolerancePolicy pol;
  const double abs = opt.abs_eps.value_or(doc.abs_eps.value_or(pol.abs_eps));
  const double rel = opt.rel_eps.value_or(doc.rel_eps.value_or(pol.rel_eps));
  return TolerancePolicy(abs, rel);
}

template <class F>
CommandResult guarded(F&& body) {
  CommandResult res;
  try {
    res = body();
  } catch (const InputError& e) {
    res = {kInputError, "", std::string("error: ") + e.what() + "\n"};
  } catch (const NonSplitField& e) {
    res = {kNonSplit, "", std::string("error: ") + e.what() + "\n"};
  } catch (const InvariantViolation& e) {
    res = {kInternal, "", std::string("internal error: ") + e.what() + "\n"};
  } catch (const std::exception& e) {
    res = {kInternal, "", std::string("internal error: ") + e.what() + "\n"};
  }
  return res;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

template <Field T>
std::string matrix_text(const Matrix<T>& m, const std::string& indent = "  ") {
  std::ostringstream os;
  for (std::size_t r = 0; r < m.order(); ++r) {
    os << indent << '[';
    for (std::size_t c = 0; c < m.order(); ++c) os << (c ? ", " : "") << FieldTraits<T>::to_string(m(r, c));
    os << "]\n";
  }
  return os.str();
}

Json input_echo(const MatrixDocument& doc) {
  Json j;
  j["field"] = field_name(doc.field);
  j["rows"] = doc.rows;
  return j;
}

template <Field T>
Json poly_json(const Polynomial<T>& p, const TolerancePolicy& pol) {
  Json coeffs = Json::array();
  for (const auto& c : p.coefficients()) coeffs.push_back(scalar_to_json(c));
  Json j;
  j["coefficients"] = std::move(coeffs);
  j["factored"] = factored_string(poly_roots(p, pol));
  return j;
}

template <Field T>
Json pcf_json(const PCanonicalForm<T>& f) {
  Json deltas = Json::array();
  for (const auto& d : f.delta_terms()) {
    Json t;
    t["i"] = d.i;
    t["coeff"] = matrix_to_json(d.coeff);
    deltas.push_back(std::move(t));
  }
  Json geos = Json::array();
  for (const auto& g : f.geo_terms()) {
    Json t;
    t["ratio"] = scalar_to_json(g.ratio);
    t["i"] = g.i;
    t["coeff"] = matrix_to_json(g.coeff);
    geos.push_back(std::move(t));
  }
  Json j;
  j["delta_terms"] = std::move(deltas);
  j["geo_terms"] = std::move(geos);
  return j;
}

template <Field T>
Json projections_json(const SpectralDecomposition<T>& d) {
  Json list = Json::array();
  if (d.zero_index > 0) {
    Json p;
    p["eigenvalue"] = scalar_to_json(field_zero<T>());
    p["multiplicity"] = d.zero_index;
    p["projection"] = matrix_to_json(d.zero_projection);
    list.push_back(std::move(p));
  }
  for (const auto& b : d.eigen) {
    Json p;
    p["eigenvalue"] = scalar_to_json(b.value);
    p["multiplicity"] = b.multiplicity;
    p["projection"] = matrix_to_json(b.projection);
    list.push_back(std::move(p));
  }
  return list;
}

template <Field T>
std::string projections_text(const SpectralDecomposition<T>& d) {
  std::ostringstream os;
  if (d.zero_index > 0) os << "pi_0 (t = " << d.zero_index << "):\n" << matrix_text(d.zero_projection);
  for (const auto& b : d.eigen)
    os << "pi_" << FieldTraits<T>::to_string(b.value) << " (t = " << b.multiplicity << "):\n" << matrix_text(b.projection);
  return os.str();
}

// Runs `body(matrix, policy)` on whichever backend the document carries.
template <class F>
CommandResult with_matrix(const MatrixDocument& doc, const GlobalOptions& opt, F&& body) {
  return guarded([&] {
    const TolerancePolicy pol = policy_for(doc, opt);
    return std::visit([&](const auto& m) { return body(m, pol); }, doc.matrix);
  });
}

}  // namespace

CommandResult cmd_pcf(const MatrixDocument& doc, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    const auto d = spectral_decompose(a, pol);
    const auto f = build_pcf(d, a, pol);
    const auto mp = minpoly_from_pcf(f);
    const bool singular = !is_nonsingular(f);
    const bool diag = is_diagonalizable(f);
    CommandResult res;
    if (opt.format == OutputFormat::Structured) {
      Json j;
      j["input"] = input_echo(doc);
      j["minimal_polynomial"] = poly_json(mp, pol);
      j["index"] = d.zero_index;
      j["singular"] = singular;
      j["diagonalizable"] = diag;
      j["projections"] = projections_json(d);
      j["pcf"] = pcf_json(f);
      res.out = dump(j);
    } else {
      std::ostringstream os;
      os << "minimal polynomial: " << factored_string(poly_roots(mp, pol)) << '\n'
         << "index: " << d.zero_index << '\n'
         << "singular: " << (singular ? "true" : "false") << '\n'
         << "diagonalizable: " << (diag ? "true" : "false") << '\n'
         << f.to_string();
      res.out = os.str();
    }
    return res;
  });
}

CommandResult cmd_eval(const MatrixDocument& doc, long long k, EvalMode mode, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    if (k < 0) throw InputError("k must be nonnegative");
    CommandResult res;
    std::string note;
    Matrix<T> value;
    if (mode == EvalMode::Power) {
      const auto f = build_pcf(a, pol);
      value = eval_power(f, static_cast<unsigned long long>(k));
      const Matrix<T> naive = naive_power(a, static_cast<unsigned long long>(k));
      if (!approx_equal(value, naive, pol))
        throw InvariantViolation("canonical-form evaluation disagrees with repeated squaring at k = " + std::to_string(k));
    } else {
      const auto dz = drazin_inverse(a, pol);
      value = drazin_power(dz, static_cast<unsigned long long>(k));
      if (k == 0) note = "A_d^0 is the identity by convention";
    }
    const char* label = mode == EvalMode::Power ? "A" : "A_d";
    if (opt.format == OutputFormat::Structured) {
      Json j;
      j["input"] = input_echo(doc);
      j["mode"] = mode == EvalMode::Power ? "power" : "drazin_power";
      j["k"] = k;
      j["value"] = matrix_to_json(value);
      if (!note.empty()) j["note"] = note;
      res.out = dump(j);
    } else {
      res.out = std::string(label) + "^" + std::to_string(k) + ":\n" + matrix_text(value);
      if (!note.empty()) res.out += "note: " + note + "\n";
    }
    return res;
  });
}

CommandResult cmd_drazin(const MatrixDocument& doc, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    const auto dz = drazin_inverse(a, pol);
    const auto check = verify_135(a, dz.inverse, dz.index, pol);
    if (!check.ok()) throw InvariantViolation("computed Drazin inverse fails its axioms");
    CommandResult res;
    if (opt.format == OutputFormat::Structured) {
      Json j;
      j["input"] = input_echo(doc);
      j["index"] = dz.index;
      j["drazin"] = matrix_to_json(dz.inverse);
      j["drazin_pcf"] = pcf_json(dz.power_form);
      res.out = dump(j);
    } else {
      res.out = "index: " + std::to_string(dz.index) + "\nA_d:\n" + matrix_text(dz.inverse) +
                "powers of A_d:\n" + dz.power_form.to_string();
    }
    return res;
  });
}

CommandResult cmd_verify(const MatrixDocument& doc, const MatrixDocument& candidate, const GlobalOptions& opt) {
  return guarded([&] {
    if (doc.field != candidate.field) throw InputError("matrix and candidate use different fields");
    if (doc.order() != candidate.order()) throw InputError("matrix and candidate have different orders");
    const TolerancePolicy pol = policy_for(doc, opt);
    return std::visit(
        [&]<Field T>(const Matrix<T>& a) {
          const auto& x = std::get<Matrix<T>>(candidate.matrix);
          const std::size_t t0 = index(a, pol);
          const auto c = verify_135(a, x, t0, pol);
          CommandResult res;
          res.exit_code = c.ok() ? kOk : kVerifyFailed;
          if (opt.format == OutputFormat::Structured) {
            Json j;
            j["index"] = t0;
            j["power_axiom"] = c.power_axiom;
            j["reflexive"] = c.reflexive;
            j["commute"] = c.commute;
            j["verdict"] = c.ok() ? "pass" : "fail";
            res.out = dump(j);
          } else {
            auto line = [](const char* name, bool ok) { return std::string(name) + ": " + (ok ? "pass" : "fail") + "\n"; };
            res.out = "index: " + std::to_string(t0) + "\n" + line("A^(t0+1) X = A^t0", c.power_axiom) +
                      line("X A X = X", c.reflexive) + line("A X = X A", c.commute) +
                      "verdict: " + (c.ok() ? "pass" : "fail") + "\n";
          }
          return res;
        },
        doc.matrix);
  });
}

CommandResult cmd_minpoly(const MatrixDocument& doc, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    const auto mp = minimal_poly(a, pol);
    CommandResult res;
    if (opt.format == OutputFormat::Structured) {
      res.out = dump(poly_json(mp, pol));
    } else {
      res.out = mp.to_string() + "\n" + factored_string(poly_roots(mp, pol)) + "\n";
    }
    return res;
  });
}

CommandResult cmd_index(const MatrixDocument& doc, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    const std::size_t t0 = index(a, pol);
    CommandResult res;
    if (opt.format == OutputFormat::Structured) {
      Json j;
      j["index"] = t0;
      res.out = dump(j);
    } else {
      res.out = std::to_string(t0) + "\n";
    }
    return res;
  });
}

CommandResult cmd_projections(const MatrixDocument& doc, const GlobalOptions& opt) {
  return with_matrix(doc, opt, [&]<Field T>(const Matrix<T>& a, const TolerancePolicy& pol) {
    const auto d = spectral_decompose(a, pol);
    CommandResult res;
    res.out = opt.format == OutputFormat::Structured ? dump(projections_json(d)) : projections_text(d);
    return res;
  });
}

CommandResult cmd_real_form(const MatrixDocument& doc, bool power_basis, const GlobalOptions& opt) {
  return guarded([&] {
    if (doc.field != FieldKind::Complex)
      throw InputError("real-form needs the complex field (pass --field complex)");
    const auto& a = std::get<Matrix<ApproxComplex>>(doc.matrix);
    const TolerancePolicy pol = policy_for(doc, opt);
    RealClosedForm rf = real_form(build_pcf(a, pol), a);
    if (power_basis) rf = rf.in_power_basis();
    CommandResult res;
    if (opt.format == OutputFormat::Structured) {
      Json entries = Json::array();
      for (std::size_t r = 0; r < rf.order; ++r)
        for (std::size_t c = 0; c < rf.order; ++c) {
          Json terms = Json::array();
          for (const auto& [t, coeff] : rf.entries[r * rf.order + c].terms()) {
            Json term;
            term["atom"] = format_atom(t);
            term["coeff"] = coeff.re();
            terms.push_back(std::move(term));
          }
          Json e;
          e["row"] = r;
          e["col"] = c;
          e["terms"] = std::move(terms);
          entries.push_back(std::move(e));
        }
      Json j;
      j["input"] = input_echo(doc);
      j["entries"] = std::move(entries);
      res.out = dump(j);
    } else {
      res.out = rf.to_string();
    }
    return res;
  });
}

CommandResult run(const std::vector<std::string>& argv) {
  CLI::App app{"Canonical forms of matrix powers and the Drazin inverse", "pcf"};
  app.require_subcommand(1);

  std::string field_opt, format_opt = "text";
  std::optional<double> abs_eps, rel_eps;
  app.add_option("--field", field_opt, "Read the input in this field")->check(CLI::IsMember({"rational", "complex"}));
  app.add_option("--abs-eps", abs_eps, "Absolute tolerance for the complex backend")->check(CLI::NonNegativeNumber);
  app.add_option("--rel-eps", rel_eps, "Relative tolerance for the complex backend")->check(CLI::NonNegativeNumber);
  app.add_option("--format", format_opt, "Output format")->check(CLI::IsMember({"text", "structured"}));

  std::string input, candidate, mode = "power";
  long long k = 0;
  bool power_basis = false;

  auto* pcf_cmd = app.add_subcommand("pcf", "Canonical form of the power sequence");
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate A^k or A_d^k");
  auto* drazin_cmd = app.add_subcommand("drazin", "Drazin inverse and its powers");
  auto* verify_cmd = app.add_subcommand("verify", "Check the Drazin axioms for a candidate");
  auto* minpoly_cmd = app.add_subcommand("minpoly", "Minimal polynomial");
  auto* index_cmd = app.add_subcommand("index", "Index of the matrix");
  auto* proj_cmd = app.add_subcommand("projections", "Spectral projections");
  auto* real_cmd = app.add_subcommand("real-form", "Closed form of A^k with real trigonometric atoms");

  for (auto* sub : {pcf_cmd, eval_cmd, drazin_cmd, verify_cmd, minpoly_cmd, index_cmd, proj_cmd, real_cmd})
    sub->add_option("input", input, "Matrix document")->required();
  eval_cmd->add_option("--k", k, "Exponent")->required();
  eval_cmd->add_option("--mode", mode, "power or drazin_power")->check(CLI::IsMember({"power", "drazin_power"}));
  verify_cmd->add_option("candidate", candidate, "Candidate Drazin inverse")->required();
  real_cmd->add_flag("--power-basis", power_basis, "Use k^i instead of C(k,i)");

  std::vector<std::string> args(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    return {kOk, app.help(), ""};
  } catch (const CLI::ParseError& e) {
    return {kInputError, "", std::string("error: ") + e.what() + "\n" + app.help()};
  }

  GlobalOptions opt;
  if (field_opt == "rational") opt.field = FieldKind::Rational;
  if (field_opt == "complex") opt.field = FieldKind::Complex;
  opt.abs_eps = abs_eps;
  opt.rel_eps = rel_eps;
  opt.format = format_opt == "structured" ? OutputFormat::Structured : OutputFormat::Text;

  return guarded([&] {
    const MatrixDocument doc = load_document(input, opt.field);
    if (pcf_cmd->parsed()) return cmd_pcf(doc, opt);
    if (eval_cmd->parsed()) return cmd_eval(doc, k, mode == "power" ? EvalMode::Power : EvalMode::DrazinPower, opt);
    if (drazin_cmd->parsed()) return cmd_drazin(doc, opt);
    if (verify_cmd->parsed()) return cmd_verify(doc, load_document(candidate, opt.field), opt);
    if (minpoly_cmd->parsed()) return cmd_minpoly(doc, opt);
    if (index_cmd->parsed()) return cmd_index(doc, opt);
    if (proj_cmd->parsed()) return cmd_projections(doc, opt);
    return cmd_real_form(doc, power_basis, opt);
  });
}

}  // namespace pcf::cli
