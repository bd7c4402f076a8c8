#pragma once

// The `alexlab` command line. run() is the whole program minus process I/O so
// tests can drive it directly.
//
// Exit codes: 0 success, 1 parse/usage error, 2 computation limit,
// 3 mathematically invalid input.

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "alexlab/alexinv.hpp"
#include "alexlab/builders.hpp"
#include "alexlab/errors.hpp"
#include "alexlab/fpgroup.hpp"
#include "alexlab/norms.hpp"
#include "alexlab/obstruct.hpp"
#include "alexlab/report.hpp"
#include "alexlab/torusgeo.hpp"

namespace alexlab::cli {

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline GroupPresentation load_presentation(const std::string& path) {
  try {
    return parse_presentation(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline std::vector<std::string> split_csv(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  out.push_back(cur);
  if (out.size() == 1 && out[0].empty()) out.clear();
  return out;
}

inline IntVector parse_int_csv(const std::string& s) {
  IntVector v;
  for (const auto& tok : split_csv(s)) {
    try {
      v.emplace_back(tok);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed integer '" + tok + "'");
    }
  }
  return v;
}

inline std::vector<Rational> parse_rational_csv(const std::string& s) {
  std::vector<Rational> v;
  for (const auto& tok : split_csv(s)) {
    try {
      Rational q(tok);
      if (q.get_den() == 0) throw std::invalid_argument(tok);
      q.canonicalize();
      v.push_back(q);
    } catch (const std::invalid_argument&) {
      throw ParseError("malformed rational '" + tok + "'");
    }
  }
  return v;
}

namespace detail {

inline std::string vec_text(const std::vector<std::int64_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string vec_text(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline std::string vec_text(const IntVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].get_str();
  return s + ")";
}

inline std::string human(const ObstructionReport& r) {
  std::ostringstream os;
  os << "test: " << r.test << "\n"
     << "b1: " << r.b1 << "\n"
     << "k0: " << r.k0 << "\n";
  for (const auto& f : r.per_k) {
    os << "Delta^" << f.k << " = " << to_string(f.delta);
    if (f.newton_dim) os << "  [newton dim " << *f.newton_dim << ", " << f.cyclotomic_verdict << "]";
    os << "\n";
  }
  os << "thickness: " << r.thickness << "\n"
     << "verdict: " << to_string(r.verdict) << "\n";
  for (const auto& w : r.witnesses) os << "witness: " << w << "\n";
  for (const auto& n : r.notes) os << "note: " << n << "\n";
  return os.str();
}

}  // namespace detail

inline RunResult run(const std::vector<std::string>& args) {
  RunResult res;
  CLI::App app{"alexlab: Alexander-type invariants and Kähler / quasi-projective obstructions"};
  app.name("alexlab");
  app.require_subcommand(1);
  bool machine = false;
  app.add_flag("--machine", machine, "Emit a single JSON document");
  auto with_machine = [&](CLI::App* s) {
    s->add_flag("--machine", machine, "Emit a single JSON document");
    return s;
  };

  std::string file, file2, phi_csv, rho_csv, t1, t2, matrix_csv, gens_csv;
  std::vector<std::string> files, images;
  int k = -1, kmax = static_cast<int>(kDefaultKmax), cv_k = 1;
  std::int64_t knot_p = 0, knot_q = 0;

  auto* ab = with_machine(app.add_subcommand("abelianize", "b1, torsion and generator images"));
  ab->add_option("file", file, ".fp presentation")->required();

  auto* delta = with_machine(app.add_subcommand("delta", "Order Delta^k of the Fox matrix"));
  delta->add_option("file", file, ".fp presentation")->required();
  delta->add_option("--k", k, "Index k (default: first nonzero order)")->check(CLI::NonNegativeNumber);

  auto* thick = with_machine(app.add_subcommand("thickness", "Newton dimension of the first nonzero order"));
  thick->add_option("file", file, ".fp presentation")->required();

  auto* norm = with_machine(app.add_subcommand("norm", "Alexander norm of a class"));
  norm->add_option("file", file, ".fp presentation")->required();
  norm->add_option("--phi", phi_csv, "Class as comma-separated integers")->required();

  auto* ball = with_machine(app.add_subcommand("ball", "Support polytope and Alexander unit ball"));
  ball->add_option("file", file, ".fp presentation")->required();

  auto* cv = with_machine(app.add_subcommand("cv", "dim H_1(X; C_rho) at a torsion character"));
  cv->add_option("file", file, ".fp presentation")->required();
  cv->add_option("--rho", rho_csv, "Character as comma-separated rationals")->required();
  cv->add_option("--k", cv_k, "Report membership in V_k")->check(CLI::NonNegativeNumber);

  auto* test = app.add_subcommand("test", "Obstruction tests");
  test->require_subcommand(1);
  auto* kahler = with_machine(test->add_subcommand("kahler", "Kähler group test"));
  auto* qp = with_machine(test->add_subcommand("qp", "Quasi-projective group test"));
  for (auto* s : {kahler, qp}) {
    s->add_option("file", file, ".fp presentation")->required();
    s->add_option("--kmax", kmax, "Largest k examined")->check(CLI::NonNegativeNumber);
  }

  auto* sum = with_machine(app.add_subcommand("sum", "Free product (connected sum) analysis"));
  sum->add_option("files", files, ".fp presentations")->required()->expected(2, -1);
  sum->add_option("--kmax", kmax, "Largest k examined")->check(CLI::NonNegativeNumber);

  auto* tori = app.add_subcommand("tori", "Translated subtori");
  tori->require_subcommand(1);
  auto* inter = with_machine(tori->add_subcommand("intersect", "Intersect two translated subtori"));
  inter->add_option("--t1", t1, "Torus spec n=..;rows=(..),..;q=(..)")->required();
  inter->add_option("--t2", t2, "Torus spec")->required();

  auto* build = app.add_subcommand("build", "Emit presentations for standard families");
  build->require_subcommand(1);
  auto* tb = with_machine(build->add_subcommand("torusbundle", "Torus bundle with 2x2 monodromy"));
  tb->add_option("--matrix", matrix_csv, "a11,a12,a21,a22")->required();
  auto* tk = with_machine(build->add_subcommand("torusknot", "Torus knot group <a,b | a^p b^-q>"));
  tk->add_option("--p", knot_p, "p")->required();
  tk->add_option("--q", knot_q, "q")->required();
  auto* fbc = with_machine(build->add_subcommand("freebycyclic", "Mapping torus of a free group map"));
  fbc->add_option("--gens", gens_csv, "Free generators, comma-separated")->required();
  fbc->add_option("--image", images, "Image word of each generator, in order")->required();

  auto* mcm = with_machine(app.add_subcommand("mcmullen", "Check ||phi||_A <= ||phi||_T on supplied data"));
  mcm->add_option("file", file, ".fp presentation")->required();
  mcm->add_option("--data", file2, "Thurston data file")->required();

  std::vector<std::string> argv_store{"alexlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_store) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    res.out = app.help();
    return res;
  } catch (const CLI::ParseError& e) {
    res.code = 1;
    res.err = std::string("alexlab: ") + e.what() + "\n";
    return res;
  }

  Json doc;
  std::ostringstream text;
  try {
    if (const char* env = std::getenv("ALEXLAB_MAX_VARS")) {
      try {
        int v = std::stoi(env);
        if (v < 1) throw std::invalid_argument(env);
        set_gcd_variable_limit(static_cast<std::size_t>(v));
      } catch (const std::exception&) {
        throw ParseError(std::string("ALEXLAB_MAX_VARS: malformed value '") + env + "'");
      }
    }

    if (ab->parsed()) {
      auto p = load_presentation(file);
      auto data = abelianize(p);
      doc = Json{{"command", "abelianize"}, {"result", to_json(data, p)}};
      text << "b1: " << data.b1 << "\n" << "torsion:";
      if (data.torsion.empty()) text << " none";
      for (const auto& t : data.torsion) text << ' ' << t;
      text << "\n";
      for (std::size_t g = 0; g < p.generator_count(); ++g)
        text << p.generators[g] << " -> " << detail::vec_text(data.images[g]) << "\n";
    } else if (delta->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto fo = first_order(f);
      std::size_t kk = k < 0 ? fo.k0 : static_cast<std::size_t>(k);
      LaurentPoly d = k < 0 ? fo.delta : order_k(f, kk);
      doc = Json{{"command", "delta"},
                 {"result", Json{{"b1", f.ab.b1}, {"k", kk}, {"k0", fo.k0}, {"delta", poly_to_json(d)}}}};
      text << to_string(d.canonical()) << "\n";
    } else if (thick->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto fo = first_order(f);
      auto th = newton_dim(fo.delta);
      doc = Json{{"command", "thickness"},
                 {"result", Json{{"b1", f.ab.b1}, {"k0", fo.k0}, {"delta", poly_to_json(fo.delta)}, {"thickness", th}}}};
      text << th << "\n";
    } else if (norm->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto fo = first_order(f);
      auto phi = parse_int_csv(phi_csv);
      if (phi.size() != f.ab.b1)
        throw MathError("phi has length " + std::to_string(phi.size()) + " but b1 = " + std::to_string(f.ab.b1));
      auto value = alexander_norm(fo.delta, phi);
      doc = Json{{"command", "norm"},
                 {"result", Json{{"phi", to_json(phi)}, {"delta", poly_to_json(fo.delta)}, {"norm", to_json(value)}}}};
      text << value << "\n";
    } else if (ball->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto fo = first_order(f);
      auto c = support_polytope(fo.delta);
      Json result{{"delta", poly_to_json(fo.delta)}, {"support_polytope", to_json(c)}};
      text << "support polytope (" << c.vertices.size() << " vertices):\n";
      for (const auto& v : c.vertices) text << "  " << detail::vec_text(v) << "\n";
      try {
        auto u = unit_ball(fo.delta);
        result["unit_ball"] = to_json(u);
        text << "unit ball (" << u.vertices.size() << " vertices):\n";
        for (const auto& v : u.vertices) text << "  " << detail::vec_text(v) << "\n";
      } catch (const MathError&) {
        result["unit_ball"] = nullptr;
        text << "unit ball: unbounded (degenerate norm)\n";
      }
      doc = Json{{"command", "ball"}, {"result", std::move(result)}};
    } else if (cv->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto q = parse_rational_csv(rho_csv);
      if (q.size() != f.ab.b1)
        throw MathError("rho has length " + std::to_string(q.size()) + " but b1 = " + std::to_string(f.ab.b1));
      CharacterPoint rho(q);
      auto rep = cv_dim(f, rho, static_cast<std::size_t>(cv_k));
      const bool member = rep.memberships.at(static_cast<std::size_t>(cv_k));
      Json flags = Json::array();
      for (bool b : rep.memberships) flags.push_back(b);
      doc = Json{{"command", "cv"},
                 {"result", Json{{"rho", to_json(rho.values())}, {"order", rho.order()}, {"dim", rep.dim},
                                 {"k", cv_k}, {"member", member}, {"memberships", std::move(flags)}}}};
      text << "dim H1(X; C_rho) = " << rep.dim << "\n"
           << "rho in V_" << cv_k << ": " << (member ? "yes" : "no") << "\n";
    } else if (kahler->parsed() || qp->parsed()) {
      auto p = load_presentation(file);
      auto r = kahler->parsed() ? kahler_test(p, static_cast<std::size_t>(kmax))
                                : qp_test(p, static_cast<std::size_t>(kmax));
      doc = Json{{"command", "test"}, {"result", to_json(r)}};
      text << detail::human(r);
    } else if (sum->parsed()) {
      std::vector<GroupPresentation> ps;
      for (const auto& f : files) ps.push_back(load_presentation(f));
      auto r = connected_sum_report(ps, static_cast<std::size_t>(kmax));
      doc = Json{{"command", "sum"}, {"result", to_json(r)}};
      for (std::size_t i = 0; i < ps.size(); ++i)
        text << "factor " << files[i] << ": Delta = " << to_string(r.factor_orders[i].delta)
             << ", thickness " << r.factor_thickness[i] << "\n";
      text << "product: Delta = " << to_string(r.product_order.delta) << ", thickness "
           << r.product_thickness << "\n"
           << "thickness additive: " << (r.additive ? "yes" : "no") << " (sum " << r.thickness_sum << ")\n"
           << "factor orders divide product order: " << (r.divisible ? "yes" : "no") << "\n"
           << detail::human(r.qp);
    } else if (inter->parsed()) {
      auto a = parse_torus_spec(t1), b = parse_torus_spec(t2);
      auto r = intersect(a, b);
      doc = Json{{"command", "tori intersect"},
                 {"result", Json{{"t1", to_json(a)}, {"t2", to_json(b)}, {"intersection", to_json(r)}}}};
      text << "meets: " << (r.meets ? "yes" : "no") << "\n";
      if (r.meets) text << "dim: " << r.dim << "\n";
      text << "parallel: " << (r.parallel ? "yes" : "no") << "\n";
    } else if (tb->parsed() || tk->parsed() || fbc->parsed()) {
      GroupPresentation p;
      if (tb->parsed()) {
        auto m = parse_int_csv(matrix_csv);
        if (m.size() != 4) throw ParseError("--matrix needs exactly four entries");
        for (const auto& x : m)
          if (!x.fits_slong_p()) throw LimitError("--matrix entry too large");
        p = torus_bundle(MonodromyMatrix(m[0].get_si(), m[1].get_si(), m[2].get_si(), m[3].get_si()));
      } else if (tk->parsed()) {
        p = torus_knot(knot_p, knot_q);
      } else {
        p = free_by_cyclic(split_csv(gens_csv), images);
      }
      doc = Json{{"command", "build"}, {"result", presentation_to_json(p)}};
      text << serialize_presentation(p);
      for (const auto& w : p.warnings) res.err += "warning: " + w + "\n";
    } else if (mcm->parsed()) {
      auto f = fox_matrix(load_presentation(file));
      auto fo = first_order(f);
      auto data = parse_thurston_data(read_file(file2));
      for (const auto& d : data)
        if (d.phi.size() != f.ab.b1) throw MathError("thurston data: phi length does not match b1");
      auto r = mcmullen_check(fo.delta, data);
      doc = Json{{"command", "mcmullen"}, {"result", to_json(r)}};
      for (const auto& e : r.entries) {
        text << "phi " << detail::vec_text(e.datum.phi) << ": alexander " << e.alexander << ", thurston "
             << e.datum.thurston << (e.datum.fibered ? ", fibered" : "") << " -> "
             << (e.pass ? "PASS" : "FAIL");
        if (!e.pass) text << " (" << e.reason << ")";
        text << "\n";
      }
    }
  } catch (const ParseError& e) {
    res.code = 1;
    res.err += std::string("alexlab: ") + e.what() + "\n";
    return res;
  } catch (const LimitError& e) {
    res.code = 2;
    res.err += std::string("alexlab: limit exceeded: ") + e.what() + "\n";
    return res;
  } catch (const MathError& e) {
    res.code = 3;
    res.err += std::string("alexlab: invalid input: ") + e.what() + "\n";
    return res;
  }
  res.out = machine ? doc.dump(2) + "\n" : text.str();
  return res;
}

}  // namespace alexlab::cli
