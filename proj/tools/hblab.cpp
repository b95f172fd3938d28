#include <cmath>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hblab/clark.hpp"
#include "hblab/cyclicity.hpp"
#include "hblab/error.hpp"
#include "hblab/factor.hpp"
#include "hblab/hb.hpp"
#include "hblab/models.hpp"
#include "hblab/parse.hpp"
#include "hblab/sigma.hpp"
#include "hblab/verify.hpp"

namespace {

using namespace hblab;
using Json = nlohmann::ordered_json;

struct Usage : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::size_t grid = 4096;
  bool exact = false;
  std::optional<double> tol;

  GridConfig grid_config() const {
    GridConfig g;
    g.n = grid;
    return g;
  }
  Tolerances tolerances() const {
    Tolerances t;
    if (tol) t.nonzero = *tol;
    return t;
  }
  Json to_json() const {
    Json j;
    j["grid"] = grid;
    j["backend"] = exact ? "exact" : "float";
    j["nonzero_tol"] = tolerances().nonzero;
    return j;
  }
};

Json cjson(cplx z) { return Json::array({z.real(), z.imag()}); }

Json pjson(const Poly& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(cjson(c));
  return j;
}

std::string qstring(const mpq_class& q) { return q.get_str(); }

Json qjson(const QPoly& p) {
  Json j = Json::array();
  for (const auto& c : p.coeffs()) j.push_back(Json::array({qstring(c.re), qstring(c.im)}));
  return j;
}

Function function_arg(const std::string& text) { return parse_function(text); }

Poly poly_arg(const std::string& text, const char* what) {
  const Function f = parse_function(text);
  if (!f.is_polynomial()) throw Error(ErrorKind::InvalidArgument, std::string(what) + " must be a polynomial");
  return f.poly();
}

HbSpace space_arg(const std::string& text, const Config& cfg) {
  return make_space(function_arg(text), cfg.grid_config(), cfg.exact ? Backend::Exact : Backend::Float, cfg.tolerances());
}

double angle_arg(const std::string& text) {
  const cplx v = parse_complex(text);
  if (v.imag() != 0.0) throw Usage("angle must be real: " + text);
  return v.real();
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(s);
  while (std::getline(is, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

// "from:to,from:to" in radians
std::vector<Arc> arcs_arg(const std::string& text) {
  std::vector<Arc> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 2) throw Usage("arc must be from:to, got " + item);
    out.push_back(Arc::between(angle_arg(parts[0]), angle_arg(parts[1])));
  }
  return out;
}

// "from:to:eta,..."
std::vector<CoverArc> cover_arg(const std::string& text) {
  std::vector<CoverArc> out;
  for (const auto& item : split(text, ',')) {
    const auto parts = split(item, ':');
    if (parts.size() != 3) throw Usage("cover arc must be from:to:eta, got " + item);
    out.push_back({Arc::between(angle_arg(parts[0]), angle_arg(parts[1])), angle_arg(parts[2])});
  }
  return out;
}

// "point[@weight];..." with complex point literals
DirichletSpec atoms_arg(const std::string& text) {
  DirichletSpec spec;
  for (const auto& item : split(text, ';')) {
    const auto at = item.find('@');
    const cplx point = parse_complex(item.substr(0, at));
    const double weight = at == std::string::npos ? 1.0 : angle_arg(item.substr(at + 1));
    spec.atoms.push_back({point, weight});
  }
  return spec;
}

Json document(const std::string& command, Json inputs, const Config& cfg, Json result) {
  Json j;
  j["command"] = command;
  j["inputs"] = std::move(inputs);
  j["config"] = cfg.to_json();
  j["result"] = std::move(result);
  return j;
}

Json report_json(const CyclicityReport& r) { return Json::parse(to_json(r)); }

Json arcs_json(const std::vector<Arc>& arcs) {
  Json j = Json::array();
  for (const auto& a : arcs) j.push_back({{"start", a.start()}, {"extent", a.extent()}});
  return j;
}

Json certificate_json(const CertificateResult& c) {
  Json j;
  j["success"] = c.success;
  if (!c.success) {
    j["failure"] = std::string(to_string(c.failure));
    j["reason"] = c.reason;
  }
  j["report"] = report_json(c.report);
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cyclicity toolkit for de Branges-Rovnyak spaces with rational symbols"};
  app.require_subcommand(1);
  app.fallthrough();
  Config cfg;
  app.add_option("--grid", cfg.grid, "quadrature grid size (power of two >= 256)");
  app.add_flag("--exact", cfg.exact, "rational backend for polynomial data");
  app.add_option("--tol", cfg.tol, "threshold below which |f(zeta)| counts as zero");

  std::string b, f, g, theta, alpha = "0", e_arcs, f_arcs, cover, rule, atoms, phi;
  std::size_t n = 60, sections = 0;

  auto* mate_cmd = app.add_subcommand("mate", "Pythagorean mate a of b");
  mate_cmd->add_option("--b", b)->required();
  auto* validate_cmd = app.add_subcommand("validate", "non-extreme check for b");
  validate_cmd->add_option("--b", b)->required();
  auto* norm_cmd = app.add_subcommand("norm", "||f||_b^2 and the mate of f");
  norm_cmd->add_option("--b", b)->required();
  norm_cmd->add_option("--f", f)->required();
  auto* decay_cmd = app.add_subcommand("decay", "distance table d_N^2 and heuristic verdict (CSV)");
  decay_cmd->add_option("--b", b)->required();
  decay_cmd->add_option("--f", f)->required();
  decay_cmd->add_option("--n", n)->check(CLI::Range(1, 256));
  auto* classify_cmd = app.add_subcommand("classify", "finite-defect classifier with necessity and decay evidence");
  classify_cmd->add_option("--b", b)->required();
  classify_cmd->add_option("--f", f)->required();
  auto* clark_cmd = app.add_subcommand("clark", "Clark measure density samples and atoms (CSV)");
  clark_cmd->add_option("--b", b)->required();
  clark_cmd->add_option("--alpha", alpha, "angle of alpha in radians");
  auto* sigma_cmd = app.add_subcommand("sigma", "lower and upper bounds for sigma(phi)");
  auto* sigma_b = sigma_cmd->add_option("--b", b, "space; bounds for phi_1");
  auto* sigma_phi = sigma_cmd->add_option("--phi", phi, "outer polynomial phi directly");
  sigma_b->excludes(sigma_phi);
  sigma_cmd->add_option("--sections", sections, "Toeplitz sections of size N, 2N, 4N");
  auto* certify_cmd = app.add_subcommand("certify", "sufficiency certificates");
  certify_cmd->add_option("--rule", rule)->required()->check(CLI::IsMember({"A", "B", "C"}));
  certify_cmd->add_option("--b", b)->required();
  certify_cmd->add_option("--f", f, "rules A and B");
  certify_cmd->add_option("--g", g, "rule C: f = V_1 g");
  certify_cmd->add_option("--E", e_arcs, "rule A: arcs from:to,...");
  certify_cmd->add_option("--F", f_arcs, "rule A: arcs from:to,...");
  certify_cmd->add_option("--cover", cover, "rule B: arcs from:to:eta,...");
  auto* dirichlet_cmd = app.add_subcommand("dirichlet", "Dirichlet-type space D(mu) with finitely many atoms");
  dirichlet_cmd->add_option("--atoms", atoms, "point[@weight];...")->required();
  dirichlet_cmd->add_option("--f", f)->required();
  auto* theta_cmd = app.add_subcommand("theta", "model b = (1 + theta)/2");
  theta_cmd->add_option("--theta", theta)->required();
  theta_cmd->add_option("--f", f);
  auto* verify_cmd = app.add_subcommand("verify", "invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n" << app.help();
    return 2;
  }

  try {
    Json out;
    if (*mate_cmd) {
      const HbSpace s = space_arg(b, cfg);
      Json r;
      r["numerator"] = pjson(s.A);
      r["denominator"] = pjson(s.q);
      r["a0"] = s.A[0].real();
      r["pythagorean_error"] = s.pythagorean_error(cfg.grid);
      if (s.exact) {
        r["exact"]["scale_sq"] = qstring(s.exact->A.scale_sq);
        r["exact"]["shape"] = qjson(s.exact->A.shape);
      }
      out = document("mate", {{"b", b}}, cfg, r);
    } else if (*validate_cmd) {
      const HbSpace s = space_arg(b, cfg);
      Json r;
      r["non_extreme"] = true;
      r["sup_b"] = sup_on_circle(s.b, cfg.grid);
      r["b0"] = cjson(s.b(0.0));
      r["pythagorean_error"] = s.pythagorean_error(cfg.grid);
      Json zs = Json::array();
      for (const cplx& z : s.circle_zeros_of_a()) zs.push_back(cjson(z));
      r["circle_zeros_of_a"] = zs;
      r["normalized"] = is_normalized(s);
      out = document("validate", {{"b", b}}, cfg, r);
    } else if (*norm_cmd) {
      const HbSpace s = space_arg(b, cfg);
      const Poly fp = poly_arg(f, "f");
      Json r;
      if (s.exact) {
        const HbElement e = element_exact(s, to_exact(fp));
        r["norm_sq"] = e.norm_sq;
        r["norm_sq_exact"] = qstring(*e.exact_norm_sq);
        r["mate"] = pjson(e.f1);
        r["mate_scaled_exact"] = qjson(*e.exact_g);
        r["mate_scale_sq"] = qstring(s.exact->A.scale_sq);
      } else {
        const HbElement e = element(s, fp);
        r["norm_sq"] = e.norm_sq;
        r["mate"] = pjson(e.f1);
        r["mate_residual"] = mate_residual(s, e.f, e.f1);
      }
      out = document("norm", {{"b", b}, {"f", f}}, cfg, r);
    } else if (*decay_cmd) {
      const HbSpace s = space_arg(b, cfg);
      const Poly fp = poly_arg(f, "f");
      const DecayTable t = s.exact ? decay_table_exact(s, to_exact(fp), n) : decay_table(s, fp, n);
      write_decay_csv(std::cout, t);
      std::cout << "# verdict " << to_string(estimate_from_decay(t)) << '\n';
      return 0;
    } else if (*classify_cmd) {
      const HbSpace s = space_arg(b, cfg);
      const Poly fp = poly_arg(f, "f");
      out = document("classify", {{"b", b}, {"f", f}}, cfg, report_json(analyze(s, fp)));
    } else if (*clark_cmd) {
      const HbSpace s = space_arg(b, cfg);
      const ClarkMeasure mu = clark_measure(s, std::polar(1.0, angle_arg(alpha)));
      write_clark_csv(std::cout, mu);
      return 0;
    } else if (*sigma_cmd) {
      Json r;
      const auto points = [](const std::vector<SigmaPoint>& pts) {
        Json j = Json::array();
        for (const auto& p : pts)
          j.push_back({{"point", cjson(p.point)}, {"angle", normalize_angle(std::arg(p.point))}, {"provenance", p.provenance}});
        return j;
      };
      Function phi_fn;
      if (!b.empty()) {
        const HbSpace s = space_arg(b, cfg);
        const SigmaBounds sb = sigma_bounds(s);
        r["normalized"] = sb.normalized;
        r["lower"] = points(sb.lower);
        r["upper"] = points(sb.upper);
        phi_fn = phi_alpha(s, 1.0);
      } else if (!phi.empty()) {
        const Poly pp = poly_arg(phi, "phi");
        phi_fn = Function::polynomial(pp);
        r["lower"] = points(sigma_lower(pp));
        Json up = Json::array();
        for (const cplx& z : sigma_upper(phi_fn))
          up.push_back({{"point", cjson(z)}, {"angle", normalize_angle(std::arg(z))}, {"provenance", "unimodular zero of phi"}});
        r["upper"] = up;
      } else {
        throw Usage("sigma needs --b or --phi");
      }
      if (sections > 0) {
        const ToeplitzTrend t = toeplitz_kernel_sections(phi_fn, sections);
        Json secs = Json::array();
        for (const auto& sec : t.sections)
          secs.push_back({{"N", sec.N}, {"near_kernel", sec.near_kernel}, {"sigma_min", sec.sigma_min}});
        r["toeplitz"] = {{"sections", secs}, {"stable", t.stable}, {"estimated_kernel_dim", t.estimated_kernel_dim}};
      }
      out = document("sigma", {{"b", b}, {"phi", phi}}, cfg, r);
    } else if (*certify_cmd) {
      const HbSpace s = space_arg(b, cfg);
      Json r;
      Json inputs{{"rule", rule}, {"b", b}};
      if (rule == "A") {
        if (f.empty() || e_arcs.empty() || f_arcs.empty()) throw Usage("rule A needs --f, --E and --F");
        const auto c = theorem_a_check(s, poly_arg(f, "f"), arcs_arg(e_arcs), arcs_arg(f_arcs));
        r = certificate_json(c);
        r["E"] = arcs_json(c.E);
        r["F"] = arcs_json(c.F);
        r["a_inverse_sq_on_E"] = c.a_inverse_sq_on_E;
        r["f_min_on_F"] = c.f_min_on_F;
        inputs["f"] = f;
        inputs["E"] = e_arcs;
        inputs["F"] = f_arcs;
      } else if (rule == "B") {
        if (f.empty()) throw Usage("rule B needs --f");
        const auto c = theorem_b_check(s, poly_arg(f, "f"), cover_arg(cover));
        r = certificate_json(c);
        Json up = Json::array();
        for (const cplx& z : c.sigma_upper) up.push_back(cjson(z));
        r["sigma_upper"] = up;
        r["grid_min"] = c.grid_min;
        inputs["f"] = f;
        inputs["cover"] = cover;
      } else {
        if (g.empty()) throw Usage("rule C needs --g");
        const auto c = theorem_c_check(s, poly_arg(g, "g"));
        r = certificate_json(c);
        r["F_numerator"] = pjson(c.F.numerator());
        r["F_denominator"] = pjson(c.F.denominator());
        r["refit_residual"] = c.refit_residual;
        r["F_norm_sq"] = c.F_norm_sq;
        Json sf = Json::array(), sp = Json::array();
        for (const cplx& z : c.sigma_F) sf.push_back(cjson(z));
        for (const cplx& z : c.sigma_phi) sp.push_back(cjson(z));
        r["sigma_F"] = sf;
        r["sigma_phi"] = sp;
        inputs["g"] = g;
      }
      out = document("certify", inputs, cfg, r);
    } else if (*dirichlet_cmd) {
      const DirichletSpec spec = atoms_arg(atoms);
      const Poly fp = poly_arg(f, "f");
      Json r;
      const DirichletNorm dn = dirichlet_norm(spec, fp);
      r["dirichlet_integral"] = dn.dirichlet;
      r["hardy_norm_sq"] = dn.hardy;
      r["norm_sq"] = dn.norm_sq;
      if (cfg.exact) {
        const ExactDirichletNorm en = dirichlet_norm_exact(exact_atoms(spec), to_exact(fp));
        r["norm_sq_exact"] = qstring(en.norm_sq);
      }
      r["report"] = report_json(dirichlet_cyclic(spec, fp));
      out = document("dirichlet", {{"atoms", atoms}, {"f", f}}, cfg, r);
    } else if (*theta_cmd) {
      const ThetaModel m = theta_model(function_arg(theta), cfg.grid_config());
      Json r;
      Json sig = Json::array();
      for (std::size_t i = 0; i < m.sigma.size(); ++i)
        sig.push_back({{"point", cjson(m.sigma[i].point)},
                       {"angle", normalize_angle(std::arg(m.sigma[i].point))},
                       {"mass", m.sigma[i].mass},
                       {"mass_error", m.sigma_error[i]}});
      r["sigma"] = sig;
      r["sigma_mass"] = m.sigma_mass();
      r["herglotz_at_zero"] = m.herglotz_at_zero;
      r["model_space_dim"] = m.model_space_dim;
      if (!f.empty()) r["report"] = report_json(theta_cyclic(m, poly_arg(f, "f")));
      out = document("theta", {{"theta", theta}, {"f", f}}, cfg, r);
    } else if (*verify_cmd) {
      const auto checks = verify_suite();
      print_checks(std::cout, checks);
      bool all = true;
      for (const auto& c : checks) all = all && c.pass;
      std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
      return all ? 0 : 1;
    }
    std::cout << out.dump(2) << '\n';
    return 0;
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Parse) {
      std::cerr << "usage error: " << e.what() << '\n';
      return 2;
    }
    Json j;
    j["error"] = std::string(to_string(e.kind()));
    j["message"] = e.what();
    std::cout << j.dump(2) << '\n';
    return 1;
  }
}
