// pfwin: command-line front end.
//
// Exit codes: 0 ok, 1 a check failed, 2 invalid input, 3 word/path error.

#include "cache.hpp"

#include "pfwin/io.hpp"

#include <CLI11.hpp>

#include <functional>
#include <iostream>
#include <sstream>

namespace {

using pfwin::json;

struct Outcome {
  json doc;
  int code = 0;
};

std::string scalar_text(const json &v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

bool is_matrix(const json &v) {
  return v.is_array() && !v.empty() && std::all_of(v.begin(), v.end(), [](const json &r) {
           return r.is_array() && std::all_of(r.begin(), r.end(), [](const json &x) { return x.is_primitive(); });
         });
}

// Plain-text rendering of a result document; everything shown also lives in the JSON.
void render(const json &v, std::ostream &out, const std::string &indent = "") {
  for (const auto &[k, x] : v.items()) {
    if (x.is_primitive()) {
      out << indent << k << ": " << scalar_text(x) << "\n";
    } else if (is_matrix(x)) {
      out << indent << k << ":\n";
      std::size_t w = 1;
      for (const auto &r : x)
        for (const auto &e : r) w = std::max(w, scalar_text(e).size());
      for (const auto &r : x) {
        out << indent << "  ";
        for (const auto &e : r) {
          const auto s = scalar_text(e);
          out << std::string(w + 1 - s.size(), ' ') << s;
        }
        out << "\n";
      }
    } else if (x.is_array() && std::all_of(x.begin(), x.end(), [](const json &e) { return e.is_primitive(); })) {
      out << indent << k << ": [";
      for (std::size_t i = 0; i < x.size(); ++i) out << (i ? ", " : "") << scalar_text(x[i]);
      out << "]\n";
    } else if (x.is_array()) {
      out << indent << k << ":\n";
      for (const auto &e : x) {
        if (e.is_object()) {
          std::string line;
          for (const auto &[ek, ev] : e.items()) line += (line.empty() ? "" : "  ") + ek + "=" + (ev.is_primitive() ? scalar_text(ev) : ev.dump());
          out << indent << "  - " << line << "\n";
        } else {
          out << indent << "  - " << e.dump() << "\n";
        }
      }
    } else {
      out << indent << k << ":\n";
      render(x, out, indent + "  ");
    }
  }
}

pfwin::WindowTuple parse_tuple(const std::string &text) {
  std::stringstream ss(text);
  pfwin::WindowTuple m{};
  std::size_t i = 0;
  for (std::string item; std::getline(ss, item, ',');) {
    if (i == 3) throw pfwin::InvalidInput("window tuple '" + text + "' has more than 3 entries");
    try {
      std::size_t used = 0;
      m[i] = std::stoi(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception &) {
      throw pfwin::InvalidInput("window tuple entry '" + item + "' is not an integer");
    }
    ++i;
  }
  if (i != 3) throw pfwin::InvalidInput("window tuple '" + text + "' needs 3 entries");
  return m;
}

json tuple_json(const pfwin::WindowTuple &m) { return json::array({m[0], m[1], m[2]}); }

json bundles_json(const std::vector<pfwin::SBundle> &bs) {
  json arr = json::array();
  for (auto b : bs) arr.push_back(pfwin::format_bundle(b));
  return arr;
}

Outcome cmd_cohomology(const std::string &expr, const std::string &space) {
  const auto b = pfwin::parse_bundle(expr);
  pfwin::CohomologyProfile p;
  if (space == "g27") {
    p = pfwin::cohomology_of(b);
  } else {
    if (b.l != 0) throw pfwin::InvalidInput("only line bundles O(d) live on p6, got '" + expr + "'");
    p = pfwin::p6_line_cohomology(b.m);
  }
  return {json{{"space", space}, {"bundle", pfwin::bundle_json(b)}, {"cohomology", pfwin::cohomology_json(p)}}, 0};
}

Outcome cmd_ext(const std::string &a, const std::string &b) {
  const auto e = pfwin::parse_bundle(a), f = pfwin::parse_bundle(b);
  const auto g = pfwin::ext_g(e, f);
  return {json{{"source", pfwin::bundle_json(e)},
               {"target", pfwin::bundle_json(f)},
               {"ext_g", pfwin::ext_json(g)},
               {"chi_g", pfwin::int_json(g.euler())},
               {"xg_higher_vanishing", pfwin::certificate_json(pfwin::higher_ext_vanishes_xg(e, f))},
               {"xp_higher_vanishing", pfwin::certificate_json(pfwin::higher_ext_vanishes_xp(e, f))}},
          0};
}

json mutation_json(const pfwin::MutationChain &c) {
  json steps = json::array();
  for (const auto &s : c.steps)
    steps.push_back({{"from", s.from},
                     {"to", s.to},
                     {"mutated", pfwin::format_bundle(s.mutated)},
                     {"window", tuple_json(s.expected)},
                     {"sink", s.is_sink},
                     {"set_equal", s.set_equal},
                     {"serre_identity", s.serre_identity}});
  json cols = json::object();
  for (const auto &[name, m] : c.collections) cols[name] = tuple_json(m);
  return {{"collections", cols}, {"steps", steps}, {"d_equals_a_twisted", c.d_is_a_twisted}, {"ok", c.ok()}};
}

Outcome cmd_window(const std::string &tuple, bool full, bool chain, unsigned jobs) {
  const auto m = parse_tuple(tuple);
  const auto w = pfwin::build_window(m);
  const auto rep = pfwin::check_exceptionality(w, jobs);
  json doc{{"m", tuple_json(m)},
           {"generators", bundles_json(w.generators)},
           {"exceptional", rep.verdict},
           {"order", bundles_json(rep.order)},
           {"hom_edges", rep.edge_count},
           {"lefschetz_order_valid", rep.lefschetz_order_valid}};
  bool ok = rep.verdict;
  if (!rep.acyclic) doc["cycle"] = bundles_json(rep.cycle);
  if (full && rep.verdict) {
    const auto &kt = pfwin::KTheory::instance();
    const auto g = kt.gram(rep.order);
    const auto cert = kt.kapranov_certificate(w.generators);
    const bool serre = kt.serre_mutation_identity(rep.order);
    doc["gram_det"] = pfwin::int_json(pfwin::determinant(g));
    doc["kapranov_det"] = pfwin::int_json(cert.det);
    doc["serre_identity"] = serre;
    ok = ok && abs(cert.det) == 1 && serre;
  }
  if (chain) {
    const auto c = pfwin::mutation_chain();
    doc["mutation_chain"] = mutation_json(c);
    ok = ok && c.ok();
  }
  doc["ok"] = ok;
  return {doc, ok ? 0 : 1};
}

Outcome cmd_mutate() {
  const auto c = pfwin::mutation_chain();
  return {mutation_json(c), c.ok() ? 0 : 1};
}

Outcome cmd_euler(const std::string &a, const std::string &b, const std::string &window) {
  const auto &kt = pfwin::KTheory::instance();
  json doc = json::object();
  if (!a.empty()) {
    const auto e = pfwin::parse_bundle(a), f = pfwin::parse_bundle(b);
    doc["source"] = pfwin::bundle_json(e);
    doc["target"] = pfwin::bundle_json(f);
    doc["chi_g"] = pfwin::int_json(pfwin::chi_g(e, f));
    doc["chi_y"] = pfwin::int_json(kt.chi_y(kt.class_of(e), kt.class_of(f)));
  }
  if (!window.empty()) {
    const auto w = pfwin::build_window(parse_tuple(window));
    const auto order = pfwin::check_exceptionality(w).order;
    doc["order"] = bundles_json(order);
    doc["gram"] = pfwin::matrix_json(kt.gram(order));
  }
  return {doc, 0};
}

Outcome cmd_cy3() {
  const auto &kt = pfwin::KTheory::instance();
  const auto &cy = kt.cy3();
  const auto &rep = pfwin::SkmsRepresentation::instance();
  json factors = json::array();
  for (const auto &f : cy.invariant_factors) factors.push_back(pfwin::int_json(f));
  json poly_plus = json::array(), poly_minus = json::array();
  for (const auto &c : rep.calibration().charpoly_plus) poly_plus.push_back(pfwin::int_json(c));
  for (const auto &c : rep.calibration().charpoly_minus) poly_minus.push_back(pfwin::int_json(c));
  json doc{{"rank", cy.r},
           {"invariant_factors", factors},
           {"J", pfwin::matrix_json(cy.J)},
           {"det_J", pfwin::int_json(pfwin::determinant(cy.J))},
           {"chi_y_W0", pfwin::matrix_json(cy.chi_y)},
           {"Tw0", pfwin::matrix_json(kt.transvection({0, 0}))},
           {"Tw1", pfwin::matrix_json(kt.transvection({1, 0}))},
           {"Tw2", pfwin::matrix_json(kt.transvection({2, 0}))},
           {"twist_O1", pfwin::matrix_json(kt.line_twist_cy3(1))},
           {"k_pole", rep.calibration().k_pole},
           {"gP_charpoly_k_plus1", poly_plus},
           {"gP_charpoly_k_minus1", poly_minus},
           {"prop_images", kt.prop_images_check()}};
  return {doc, 0};
}

Outcome cmd_monodromy(const std::string &text, bool check, bool via_pole) {
  const auto &rep = pfwin::SkmsRepresentation::instance();
  json doc = json::object();
  int code = 0;
  if (!text.empty() || !check) {
    const auto w = pfwin::parse_word(text);
    const auto reduced = rep.reduce_path(w, via_pole);
    const auto m = rep.evaluate_loop(reduced);
    doc["word"] = pfwin::format_word(w);
    doc["reduced"] = pfwin::format_word(reduced);
    doc["matrix"] = pfwin::matrix_json(m);
    doc["direct_agrees"] = rep.evaluate_direct(w).matrix == m;
  }
  if (check) {
    const auto r = pfwin::check_relations();
    doc["relations"] = {{"k_pole", r.k_pole},
                        {"big_circle", r.big_circle},
                        {"generators_preserve_J", r.generators_preserve_pairing},
                        {"window_shifts", {r.window_shifts[0], r.window_shifts[1], r.window_shifts[2]}},
                        {"random_words", r.words_checked},
                        {"random_words_agreeing", r.words_agreeing},
                        {"ok", r.ok()}};
    if (!r.first_disagreement.empty()) doc["relations"]["first_disagreement"] = r.first_disagreement;
    if (!r.ok()) code = 1;
  }
  return {doc, code};
}

Outcome cmd_verify(unsigned jobs, bool timings) {
  pfwin::VerifyOptions opt;
  opt.jobs = jobs;
  const auto results = pfwin::run_acceptance(opt);
  auto doc = pfwin::report_json(results, timings);
  return {doc, doc["verdict"].get<bool>() ? 0 : 1};
}

void print_verify_summary(const json &doc, std::ostream &out) {
  for (const auto &c : doc["checks"]) {
    out << (c["pass"].get<bool>() ? "PASS" : "FAIL") << "  [" << c["id"].get<int>() << "] " << c["name"].get<std::string>() << ": "
        << c["detail"].get<std::string>();
    if (c.contains("witness")) out << c["witness"].get<std::string>();
    if (c.contains("seconds")) out << "  (" << c["seconds"].get<double>() << " s)";
    out << "\n";
  }
  out << "verdict: " << (doc["verdict"].get<bool>() ? "all checks pass" : "FAILED") << "\n";
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Window-equivalence verification toolkit for G(2,7) and its Pfaffian dual"};
  app.require_subcommand(1);
  app.fallthrough(); // global flags may follow the subcommand
  bool as_json = false, no_cache = false;
  unsigned jobs = 1;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("--no-cache", no_cache, "bypass the on-disk result cache");
  app.add_option("--jobs", jobs, "worker threads for pair sweeps")->check(CLI::Range(1u, 256u));

  std::string expr, expr2, space = "g27", tuple, word, gram_window;
  bool full = false, chain = false, check_rel = false, via_pole = false, timings = false;

  auto *coh = app.add_subcommand("cohomology", "sheaf cohomology of a bundle");
  coh->add_option("bundle", expr, "O(m) | S(m) | Sym^l S(m) | Sym^l S^v(m)")->required();
  coh->add_option("--space", space, "g27 or p6")->check(CLI::IsMember({"g27", "p6"}));

  auto *ext = app.add_subcommand("ext", "Ext groups on G(2,7) and vanishing certificates on both phases");
  ext->add_option("source", expr)->required();
  ext->add_option("target", expr2)->required();

  auto *win = app.add_subcommand("window", "build and check a window collection");
  win->add_option("--m", tuple, "m0,m1,m2")->required();
  win->add_flag("--check", "exceptionality check (default)");
  win->add_flag("--full", full, "also gram, Kapranov fullness and Serre identity");
  win->add_flag("--mutate-chain", chain, "also replay the A..E mutation chain");

  app.add_subcommand("mutate", "replay the A..E mutation chain");

  auto *eul = app.add_subcommand("euler", "Euler pairings on G(2,7) and Y_G");
  eul->add_option("source", expr);
  eul->add_option("target", expr2);
  eul->add_option("--gram", gram_window, "print the gram matrix of window m0,m1,m2");

  app.add_subcommand("cy3", "Y_G numerical lattice, twists and pole calibration");

  auto *mono = app.add_subcommand("monodromy", "evaluate a loop or path word");
  mono->add_option("word", word, "tokens gG g0 g1 g2 gP psi0..psi3, optional ^-1");
  mono->add_flag("--check-relations", check_rel, "verify the groupoid relations");
  mono->add_flag("--via-pole", via_pole, "rewrite psi3 pairs through the pole relation");

  auto *ver = app.add_subcommand("verify", "run the full acceptance suite");
  ver->add_flag("--timings", timings, "report wall-clock timings (disables caching)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  const auto *sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  std::function<Outcome()> run;
  std::string args;
  bool cacheable = false;
  if (name == "cohomology") {
    run = [&] { return cmd_cohomology(expr, space); };
  } else if (name == "ext") {
    run = [&] { return cmd_ext(expr, expr2); };
  } else if (name == "window") {
    run = [&] { return cmd_window(tuple, full, chain, jobs); };
    args = tuple + (full ? " full" : "") + (chain ? " chain" : "");
    cacheable = true;
  } else if (name == "mutate") {
    run = [&] { return cmd_mutate(); };
    cacheable = true;
  } else if (name == "euler") {
    if (expr.empty() != expr2.empty()) {
      std::cerr << "error: euler needs both a source and a target bundle\n";
      return 2;
    }
    if (expr.empty() && gram_window.empty()) {
      std::cerr << "error: euler needs two bundles or --gram\n";
      return 2;
    }
    run = [&] { return cmd_euler(expr, expr2, gram_window); };
  } else if (name == "cy3") {
    run = [&] { return cmd_cy3(); };
    cacheable = true;
  } else if (name == "monodromy") {
    run = [&] { return cmd_monodromy(word, check_rel, via_pole); };
  } else {
    run = [&] { return cmd_verify(jobs, timings); };
    cacheable = !timings;
  }

  Outcome out;
  try {
    pfwin::cli::ResultCache cache(cacheable && !no_cache);
    const auto key = pfwin::cli::ResultCache::key(name, args, pfwin::kConventionsVersion);
    bool hit = false;
    if (auto cached = cache.get(key)) {
      try {
        auto j = json::parse(*cached);
        out = {j.at("doc"), j.at("code").get<int>()};
        hit = true;
      } catch (const std::exception &) {
      }
    }
    if (!hit) {
      out = run();
      cache.put(key, json{{"doc", out.doc}, {"code", out.code}}.dump());
    }
  } catch (const pfwin::WordError &e) {
    std::cerr << "word error: " << e.what() << "\n";
    return 3;
  } catch (const pfwin::InvalidInput &e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const pfwin::InconsistencyError &e) {
    std::cerr << "internal inconsistency: " << e.what() << "\n";
    return 1;
  }

  if (as_json)
    std::cout << out.doc.dump(2) << "\n";
  else if (name == "verify")
    print_verify_summary(out.doc, std::cout);
  else
    render(out.doc, std::cout);

  if (name == "verify" && out.code != 0)
    for (const auto &c : out.doc["checks"])
      if (!c["pass"].get<bool>()) {
        std::cerr << "first failure [" << c["id"].get<int>() << "] " << c["name"].get<std::string>() << ": "
                  << c.value("witness", "") << "\n";
        break;
      }
  return out.code;
}
