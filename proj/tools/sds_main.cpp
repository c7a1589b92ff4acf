#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sds/specfile.hpp"
#include "sds/toeplitz.hpp"

using namespace sds;

namespace {

// Exit-code contract: 0 definite positive / success, 1 definite negative,
// 2 unknown or budget exhausted, 3 input error.
constexpr int kYes = 0;
constexpr int kNo = 1;
constexpr int kUnknown = 2;
constexpr int kInput = 3;

const Sft& sft_ref(const SpecFile& f, const std::string& name) {
  auto it = f.sfts.find(name);
  if (it == f.sfts.end()) throw input_error("no sft named '" + name + "'");
  return it->second;
}

const ColoringAutomaton& automaton_ref(const SpecFile& f, const std::string& name) {
  auto it = f.automata.find(name);
  if (it == f.automata.end()) throw input_error("no automaton named '" + name + "'");
  return it->second;
}

const SoficPresentation& presentation_ref(const SpecFile& f, const std::string& name) {
  auto it = f.presentations.find(name);
  if (it == f.presentations.end()) throw input_error("no presentation named '" + name + "'");
  return it->second;
}

void print_rauzy(const RauzyGraph& r) {
  std::cout << "vertices:";
  for (const std::string& v : r.vertices) std::cout << ' ' << v;
  std::cout << "\n";
  for (int gi = 0; gi < r.group.generator_count(); ++gi) {
    std::cout << "E[" << element_str(r.group.generator(gi)) << "]:";
    for (auto [u, v] : r.edges[static_cast<size_t>(gi)])
      std::cout << ' ' << r.vertices[static_cast<size_t>(u)] << ">"
                << r.vertices[static_cast<size_t>(v)];
    std::cout << "\n";
  }
}

std::vector<int> parse_letter_map(const Sft& x, const std::vector<std::string>& entries,
                                  std::vector<std::string>* target_names) {
  std::map<std::string, int> target_ids;
  std::vector<int> m(x.alphabet.size(), -1);
  for (const std::string& e : entries) {
    size_t colon = e.find(':');
    if (colon == std::string::npos) throw input_error("map entries are letter:target");
    int li = x.letter_index(e.substr(0, colon));
    if (li < 0) throw input_error("unknown letter in map entry '" + e + "'");
    std::string t = e.substr(colon + 1);
    auto [it, fresh] = target_ids.emplace(t, static_cast<int>(target_ids.size()));
    (void)fresh;
    m[static_cast<size_t>(li)] = it->second;
  }
  for (int v : m)
    if (v < 0) throw input_error("map is not total on the alphabet");
  target_names->resize(target_ids.size());
  for (const auto& [name, id] : target_ids) (*target_names)[static_cast<size_t>(id)] = name;
  return m;
}

ZRecode recode_or_fail(const Sft& x) {
  if (!x.group.single_z()) throw input_error("this command needs a single-Z sft");
  return z_first_step(x);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"computational symbolic dynamics over free products"};
  app.require_subcommand(1);

  std::string file, name, second;
  int radius = 3, window = 4, length = 8, depth = 4, cap = 6;
  auto add_bounds = [&](CLI::App* cmd) {
    cmd->add_option("--radius", radius, "pattern/interval bound (default 3)");
    cmd->add_option("--window", window, "sub-sft search window (default 4)");
    cmd->add_option("--length", length, "word length bound (default 8)");
    cmd->add_option("--depth", depth, "inverse-system depth (default 4)");
    cmd->add_option("--cap", cap, "recoding level cap (default 6)");
  };

  auto* lang = app.add_subcommand("lang", "language counts and words of an sft");
  lang->add_option("file", file)->required();
  lang->add_option("sft", name)->required();
  add_bounds(lang);

  auto* essential = app.add_subcommand("essential", "essential one-step form of an sft");
  essential->add_option("file", file)->required();
  essential->add_option("sft", name)->required();

  auto* recode = app.add_subcommand("recode", "Rauzy-graph form of an sft");
  recode->add_option("file", file)->required();
  recode->add_option("sft", name)->required();
  add_bounds(recode);

  auto* freeprod = app.add_subcommand("freeprod", "free product of two sfts");
  freeprod->add_option("file", file)->required();
  freeprod->add_option("x", name)->required();
  freeprod->add_option("y", second)->required();

  std::vector<std::string> phi_entries, psi_entries;
  auto* rfp = app.add_subcommand("rfp", "restricted free product of two sfts");
  rfp->add_option("file", file)->required();
  rfp->add_option("x", name)->required();
  rfp->add_option("y", second)->required();
  rfp->add_option("--phi", phi_entries, "letter:target entries for x")->required();
  rfp->add_option("--psi", psi_entries, "letter:target entries for y")->required();

  std::vector<std::string> map_entries;
  auto* image = app.add_subcommand("image", "canonical sofic image of an sft under a letter map");
  image->add_option("file", file)->required();
  image->add_option("sft", name)->required();
  image->add_option("--map", map_entries, "letter:target entries")->required();

  auto* soficEq = app.add_subcommand("sofic-eq", "decide equality of two presentations");
  soficEq->add_option("file", file)->required();
  soficEq->add_option("p", name)->required();
  soficEq->add_option("q", second)->required();

  auto* isolated = app.add_subcommand("isolated", "isolation verdict for a Z-sft");
  isolated->add_option("file", file)->required();
  isolated->add_option("sft", name)->required();
  add_bounds(isolated);

  auto* nmc = app.add_subcommand("nmc", "no-middle-cycles check for a Z-sft");
  nmc->add_option("file", file)->required();
  nmc->add_option("sft", name)->required();

  int cyl_window = 0;
  auto* minimal = app.add_subcommand("minimal", "minimality verdict for a Z-sft");
  minimal->add_option("file", file)->required();
  minimal->add_option("sft", name)->required();
  minimal->add_option("--cyl-window", cyl_window,
                      "check minimality against all cylinders on [0,N)");
  add_bounds(minimal);

  std::string color, start = "e";
  auto* autoRun = app.add_subcommand("auto-run", "run a coloring automaton");
  autoRun->add_option("file", file)->required();
  autoRun->add_option("automaton", name)->required();
  autoRun->add_option("--color", color, "starting color (default: first)");
  autoRun->add_option("--start", start, "starting element (default e)");
  add_bounds(autoRun);

  auto* autoSft = app.add_subcommand("auto-sft", "tracking sft sampled from runs");
  autoSft->add_option("file", file)->required();
  autoSft->add_option("automaton", name)->required();
  add_bounds(autoSft);

  auto* autoVerify = app.add_subcommand("auto-verify", "run the automaton verification battery");
  autoVerify->add_option("file", file)->required();
  autoVerify->add_option("automaton", name)->required();
  add_bounds(autoVerify);

  auto* trace = app.add_subcommand("trace", "validate and trace a pseudo-orbit");
  trace->add_option("file", file)->required();
  trace->add_option("orbit", name)->required();

  int n0 = 1;
  auto* mlCheck = app.add_subcommand("ml-check", "Mittag-Leffler stabilization check");
  mlCheck->add_option("file", file)->required();
  mlCheck->add_option("system", name)->required();
  mlCheck->add_option("--level", n0, "base level (default 1)");
  add_bounds(mlCheck);

  std::string omega;
  long long lo = 0, hi = 26;
  auto* tgen = app.add_subcommand("toeplitz-gen", "generate a Toeplitz coding window");
  tgen->add_option("--omega", omega, "prefix digits over {1,2}, e.g. 121")->required();
  tgen->add_option("--lo", lo, "interval start (default 0)");
  tgen->add_option("--hi", hi, "interval end (default 26)");

  int recover_levels = -1;
  auto* trec = app.add_subcommand("toeplitz-recover", "recover a prefix from a window file");
  trec->add_option("file", file)->required();
  trec->add_option("--levels", recover_levels, "levels to recover (default: all possible)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*lang) {
      SpecFile f = load_spec_file(file);
      const Sft& x = sft_ref(f, name);
      for (int n = 1; n <= length; ++n) {
        auto words = exact_z_words(x, n);
        std::cout << "length " << n << ": " << words.size() << "\n";
        if (n == length)
          for (const auto& w : words) {
            for (size_t i = 0; i < w.size(); ++i)
              std::cout << (i ? " " : "") << x.alphabet[static_cast<size_t>(w[i])];
            std::cout << "\n";
          }
      }
      return kYes;
    }
    if (*essential) {
      SpecFile f = load_spec_file(file);
      ZRecode zr = recode_or_fail(sft_ref(f, name));
      print_rauzy(z_to_rauzy_graph(zr.graph));
      return zr.graph.empty() ? kNo : kYes;
    }
    if (*recode) {
      SpecFile f = load_spec_file(file);
      ToRauzy tr = to_rauzy(sft_ref(f, name), radius);
      print_rauzy(tr.graph);
      std::cout << "letters:";
      const Sft& x = sft_ref(f, name);
      for (int l : tr.letter_map) std::cout << ' ' << x.alphabet[static_cast<size_t>(l)];
      std::cout << "\nmargin: " << (tr.margin_used < 0 ? "exact" : std::to_string(tr.margin_used))
                << "\n";
      return tr.graph.empty() ? kNo : kYes;
    }
    if (*freeprod) {
      SpecFile f = load_spec_file(file);
      Sft fp = free_product(sft_ref(f, name), sft_ref(f, second));
      SpecFile outf;
      outf.groups.emplace("product", fp.group);
      outf.sfts.emplace(name + "_star_" + second, fp);
      outf.sft_group[name + "_star_" + second] = "product";
      std::cout << serialize_spec(outf);
      return kYes;
    }
    if (*rfp) {
      SpecFile f = load_spec_file(file);
      const Sft& x = sft_ref(f, name);
      const Sft& y = sft_ref(f, second);
      std::vector<std::string> tx, ty;
      std::vector<int> phi = parse_letter_map(x, phi_entries, &tx);
      std::vector<int> psi0 = parse_letter_map(y, psi_entries, &ty);
      if (tx != ty) {
        // align psi's targets with phi's naming
        for (int& v : psi0) {
          const std::string& t = ty[static_cast<size_t>(v)];
          auto it = std::find(tx.begin(), tx.end(), t);
          if (it == tx.end()) throw input_error("psi target '" + t + "' unused by phi");
          v = static_cast<int>(it - tx.begin());
        }
      }
      Sft prod = restricted_free_product(x, y, phi, psi0);
      SpecFile outf;
      outf.groups.emplace("product", prod.group);
      outf.sfts.emplace(name + "_rstar_" + second, prod);
      outf.sft_group[name + "_rstar_" + second] = "product";
      std::cout << serialize_spec(outf);
      return kYes;
    }
    if (*image) {
      SpecFile f = load_spec_file(file);
      const Sft& x = sft_ref(f, name);
      ZRecode zr = recode_or_fail(x);
      std::vector<std::string> targets;
      std::vector<int> m0 = parse_letter_map(x, map_entries, &targets);
      std::vector<int> m(zr.graph.names.size());
      for (size_t v = 0; v < m.size(); ++v)
        m[v] = m0[static_cast<size_t>(zr.letter_map[v])];
      SoficPresentation pres =
          canonical_form(image_sofic(zr.graph, make_alphabet_map(zr.graph.names, targets, m)));
      std::cout << presentation_str(pres);
      return kYes;
    }
    if (*soficEq) {
      SpecFile f = load_spec_file(file);
      bool eq = sofic_equal(presentation_ref(f, name), presentation_ref(f, second));
      std::cout << (eq ? "equal" : "distinct") << "\n";
      return eq ? kYes : kNo;
    }
    if (*isolated) {
      SpecFile f = load_spec_file(file);
      IsolationVerdict v = isolated_check(sft_ref(f, name), radius, window, length, cap);
      const Sft& x = sft_ref(f, name);
      switch (v.status) {
        case IsolationVerdict::Status::IsolatedCertified:
          std::cout << "status: isolated-certified\ncertificate: " << v.bounds << "\n";
          return kYes;
        case IsolationVerdict::Status::NotIsolated: {
          std::cout << "status: not-isolated\ncertificate: sub-sft at window "
                    << v.witness->window_len << " forbidding";
          for (int l : v.witness->removed_word)
            std::cout << ' ' << x.alphabet[static_cast<size_t>(l)];
          std::cout << "; language differs at length " << v.witness->difference_length << "\n";
          return kNo;
        }
        case IsolationVerdict::Status::Unknown:
          std::cout << "status: unknown\nbounds: " << v.bounds << "\n";
          return kUnknown;
      }
    }
    if (*nmc) {
      SpecFile f = load_spec_file(file);
      ZRecode zr = recode_or_fail(sft_ref(f, name));
      NmcReport rep = nmc_check(zr.graph);
      std::cout << (rep.nmc ? "nmc: yes" : "nmc: no") << "\n";
      return rep.nmc ? kYes : kNo;
    }
    if (*minimal) {
      SpecFile f = load_spec_file(file);
      const Sft& x = sft_ref(f, name);
      std::optional<std::vector<Pattern>> cyls;
      if (cyl_window > 0) {
        std::vector<Pattern> list;
        std::vector<GroupElement> supp;
        for (int i = 0; i < cyl_window; ++i)
          supp.push_back(i == 0 ? identity_element() : GroupElement{{Syllable{0, i}}});
        Support s = sorted_support(std::move(supp));
        for (const auto& wrd : exact_z_words(x, cyl_window))
          list.push_back(make_pattern(s, wrd, static_cast<int>(x.alphabet.size())));
        cyls = std::move(list);
      }
      MinimalVerdict v = minimal_check(x, cyls, window, cap);
      switch (v.status) {
        case MinimalVerdict::Status::Minimal:
          std::cout << "status: minimal\ncertificate: " << v.note << "\n";
          return kYes;
        case MinimalVerdict::Status::NotMinimal:
          std::cout << "status: not-minimal\ncertificate: " << v.note << "\n";
          return kNo;
        case MinimalVerdict::Status::Unknown:
          std::cout << "status: unknown\nbounds: " << v.note << "\n";
          return kUnknown;
      }
    }
    if (*autoRun) {
      SpecFile f = load_spec_file(file);
      const ColoringAutomaton& a = automaton_ref(f, name);
      int c = 0;
      if (!color.empty()) {
        c = -1;
        for (size_t i = 0; i < a.colors.size(); ++i)
          if (a.colors[i] == color) c = static_cast<int>(i);
        if (c < 0) throw input_error("unknown color '" + color + "'");
      }
      TrackedConfig cfg = run(a, parse_element(a.group, start), c, radius);
      for (size_t i = 0; i < cfg.support.size(); ++i)
        std::cout << element_str(cfg.support[i]) << " "
                  << tracked_letter_name(a, cfg.letters[i]) << "\n";
      return kYes;
    }
    if (*autoSft) {
      SpecFile f = load_spec_file(file);
      TildeSft t = tilde_sft(automaton_ref(f, name), radius);
      std::cout << "alphabet: " << t.sft.alphabet.size() << " letters\n";
      std::cout << "allowed: " << t.sft.allowed.size() << " window patterns\n";
      if (t.stabilized_at)
        std::cout << "stabilized at radius " << *t.stabilized_at << "\n";
      else
        std::cout << "not stabilized within radius " << radius << "\n";
      return t.stabilized_at ? kYes : kUnknown;
    }
    if (*autoVerify) {
      SpecFile f = load_spec_file(file);
      const ColoringAutomaton& a = automaton_ref(f, name);
      bool ok = true;
      for (int c = 0; c < static_cast<int>(a.colors.size()); ++c) {
        auto violation = check_local_rules(a, run(a, identity_element(), c, radius + 2));
        if (violation) {
          std::cout << "rules: fail (" << *violation << ")\n";
          ok = false;
        }
      }
      if (ok) std::cout << "rules: pass\n";
      TildeSft t = tilde_sft(a, radius + 3);
      DichotomyReport dich = dichotomy_check(t, radius);
      std::cout << "dichotomy: " << (dich.pass ? "pass" : "fail") << " (" << dich.checked
                << " patterns)\n";
      ok = ok && dich.pass;
      auto sft_route = global_patterns(t.sft, radius, 2).patterns;
      std::set<std::vector<int>> sft_tuples;
      for (const Pattern& p : sft_route) sft_tuples.insert(p.letters);
      auto run_route = run_ball_patterns(t, radius, 2 * radius + 2);
      bool proj = project_to_colors(t, sft_tuples) == project_to_colors(t, run_route);
      std::cout << "projection: " << (proj ? "pass" : "fail") << "\n";
      ok = ok && proj;
      return ok ? kYes : kNo;
    }
    if (*trace) {
      SpecFile f = load_spec_file(file);
      auto it = f.orbits.find(name);
      if (it == f.orbits.end()) throw input_error("no pseudo-orbit named '" + name + "'");
      TraceResult t = validate_and_trace(it->second.orbit);
      if (!t.traced) {
        std::cout << "refusal at index " << t.refusal_index << "\n";
        return kNo;
      }
      std::cout << "trace: ...";
      for (int v : t.word)
        std::cout << ' ' << it->second.orbit.graph.names[static_cast<size_t>(v)];
      std::cout << " ...\n";
      return kYes;
    }
    if (*mlCheck) {
      SpecFile f = load_spec_file(file);
      auto it = f.systems.find(name);
      if (it == f.systems.end()) throw input_error("no system named '" + name + "'");
      int d = std::min(depth, static_cast<int>(it->second.system.levels.size()) - n0);
      if (d < 1) throw input_error("system too shallow for the requested check");
      MlReport rep = ml_check(it->second.system, n0, d);
      for (size_t i = 0; i < rep.images.size(); ++i)
        std::cout << "image " << (n0 + static_cast<int>(i)) << ": "
                  << rep.images[i].vertex_count << " states\n";
      if (rep.stabilized_at) {
        std::cout << "stabilized at level " << *rep.stabilized_at << "\n";
        return kYes;
      }
      std::cout << "no stabilization within depth " << d << "\n";
      return kUnknown;
    }
    if (*tgen) {
      std::vector<int> om;
      for (char ch : omega) {
        if (ch != '1' && ch != '2') throw input_error("omega digits must be 1 or 2");
        om.push_back(ch - '0');
      }
      std::cout << toeplitz_window_str(toeplitz_generate(om, lo, hi));
      return kYes;
    }
    if (*trec) {
      std::ostringstream buf;
      if (file == "-") {
        buf << std::cin.rdbuf();
      } else {
        std::ifstream in(file);
        if (!in) throw input_error("cannot open '" + file + "'");
        buf << in.rdbuf();
      }
      RecoverResult r = toeplitz_recover(parse_toeplitz_window(buf.str()), recover_levels);
      if (r.corrupted) {
        std::cout << "corruption at position " << r.corrupt_position << "\n";
        return kNo;
      }
      std::cout << "omega:";
      for (int v : r.omega) std::cout << ' ' << v;
      std::cout << "\n";
      if (recover_levels > 0 && static_cast<int>(r.omega.size()) < recover_levels) {
        std::cout << "partial: recovered " << r.omega.size() << " of " << recover_levels << "\n";
        return kUnknown;
      }
      return kYes;
    }
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kUnknown;
  } catch (const not_applicable& e) {
    std::cerr << "not applicable: " << e.what() << "\n";
    return kNo;
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
  return kInput;
}
