#include "qoi/cli.hpp"

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include <CLI11.hpp>

#include "qoi/error.hpp"
#include "qoi/io.hpp"

namespace qoi {

namespace {

struct Options {
  std::string command;
  std::string input = "-";
  std::string format = "json";
  std::vector<std::int64_t> bound;
  bool short_form = false;
  bool report = false;
};

Json read_document(const Options& opt, std::istream& in) {
  std::string text;
  if (opt.input == "-") {
    text.assign(std::istreambuf_iterator<char>(in), {});
  } else {
    std::ifstream file(opt.input);
    if (!file) throw MalformedInput("cannot open " + opt.input);
    text.assign(std::istreambuf_iterator<char>(file), {});
  }
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
}

SemigroupPresentation presentation(const Json& doc) { return validate(parse_charseq(doc)); }

// A series document, or a charseq document turned into its short form.
CyclotomicRational series_of(const Json& doc) {
  if (doc.is_object() && doc.value("kind", "") == "charseq") {
    auto sp = presentation(doc);
    return short_form(poincare_forward(sp, essential_divisors(sp)));
  }
  return parse_series(doc);
}

std::string text_lines(const Json& value, const std::string& indent = "") {
  std::string out;
  for (const auto& [key, v] : value.items()) {
    if (v.is_object()) {
      out += indent + key + ":\n" + text_lines(v, indent + "  ");
    } else {
      out += indent + key + ": " + (v.is_string() ? v.get<std::string>() : v.dump()) + "\n";
    }
  }
  return out;
}

std::string render(const Options& opt, const Json& result, const std::string& text) {
  if (opt.format == "json") return result.dump() + "\n";
  return text.empty() ? text_lines(result) : text;
}

std::string dispatch(const Options& opt, const Json& doc) {
  const std::string& cmd = opt.command;
  if (cmd == "validate") {
    auto sp = presentation(doc);
    Json r{{"valid", true}, {"d", sp.d()}, {"g", sp.g()}, {"c", sp.c}, {"n", sp.ns},
           {"normalized", sp.normalized}};
    return render(opt, r, "");
  }
  if (cmd == "invariants") {
    auto sp = presentation(doc);
    auto sl = singular_locus(sp);
    Json gammas = Json::array(), lattices = Json::array(), m = Json::array();
    for (const auto& g : sp.gammas) gammas.push_back(rational_vector(g));
    for (const auto& l : sp.lattices) lattices.push_back(to_json(l));
    for (const auto& x : sp.m) m.push_back(x.get_str());
    Json codim2 = Json::array();
    for (const auto& [i, j] : sl.codim2) codim2.push_back(Json::array({i, j}));
    Json r{{"d", sp.d()},
           {"g", sp.g()},
           {"c", sp.c},
           {"n", sp.ns},
           {"degree", sp.degree.get_str()},
           {"normalized", sp.normalized},
           {"gammas", gammas},
           {"lattices", lattices},
           {"N", to_json(sp.lattice_N)},
           {"m", m},
           {"singular_locus", Json{{"codim1", sl.codim1}, {"codim2", codim2}}}};
    return render(opt, r, "");
  }
  if (cmd == "essential") {
    auto sp = presentation(doc);
    auto ed = essential_divisors(sp);
    return render(opt, to_json(ed, essential_matrix(ed)), "");
  }
  if (cmd == "poincare") {
    auto sp = presentation(doc);
    auto cr = poincare_forward(sp, essential_divisors(sp));
    if (opt.short_form) cr = short_form(cr);
    return render(opt, to_json(cr, opt.short_form), format_series(cr) + "\n");
  }
  if (cmd == "expand" || cmd == "count") {
    if (opt.bound.empty()) throw MalformedInput(cmd + " needs --bound");
    if (cmd == "expand") return render(opt, to_json(expand(series_of(doc), opt.bound)), "");
    auto sp = presentation(doc);
    return render(opt, to_json(count_fibers(sp, essential_divisors(sp), opt.bound)), "");
  }
  if (cmd == "invert") {
    auto cr = series_of(doc);
    return render(opt, to_json(recover(short_form(cr)), opt.report), "");
  }
  if (cmd == "zeta") {
    auto sp = presentation(doc);
    auto report = zeta_mcewan_nemethi(sp, essential_divisors(sp));
    std::string text = "case " + std::string(report.zeta_case == ZetaCase::A ? "A" : "B") +
                       "\nzeta = " + format_series(report.zeta) +
                       "\nP(t) = " + format_series(report.specialized) +
                       "\nidentity verified: " + (report.identity_verified ? "yes" : "no") + "\n";
    return render(opt, to_json(report), text);
  }
  // equi
  if (doc.value("kind", "") != "pair") throw MalformedInput("equi expects a pair document");
  if (!doc.contains("first") || !doc.contains("second")) throw MalformedInput("pair needs \"first\" and \"second\"");
  auto k = equi_check(series_of(doc.at("first")), series_of(doc.at("second")));
  Json r{{"k", k ? Json(*k) : Json(nullptr)}};
  return render(opt, r, k ? "k = " + std::to_string(*k) + "\n" : "not equisingular\n");
}

}  // namespace

int run(std::vector<std::string> args, std::istream& in, std::ostream& out) {
  Options opt;
  CLI::App app{"Poincare series of irreducible quasi-ordinary hypersurfaces", "qoi"};
  app.require_subcommand(1);
  app.add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.set_help_all_flag("--help-all");

  auto add = [&](const std::string& name, const std::string& about) {
    CLI::App* sub = app.add_subcommand(name, about);
    sub->add_option("input", opt.input, "input document, - for stdin");
    sub->add_option("--format", opt.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->callback([&opt, name] { opt.command = name; });
    return sub;
  };
  add("validate", "check a characteristic sequence");
  add("invariants", "lattices, semigroup generators and singular locus");
  add("essential", "essential valuations and the essential matrix");
  add("poincare", "forward Poincare series")->add_flag("--short", opt.short_form, "cancel common factors");
  add("expand", "truncated expansion of a series")
      ->add_option("--bound", opt.bound, "box a_1,...,a_p")->delimiter(',')->allow_extra_args(false)->required();
  add("count", "fiber counts of the semigroup")
      ->add_option("--bound", opt.bound, "box a_1,...,a_p")->delimiter(',')->allow_extra_args(false)->required();
  add("invert", "characteristic exponents from a short form")
      ->add_flag("--report", opt.report, "include the branch and the linear systems");
  add("zeta", "monodromy zeta function and its factorization");
  add("equi", "equisingularity test for a pair of series");

  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    out << Json{{"error", "MalformedInput"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    out << dispatch(opt, read_document(opt, in));
    return 0;
  } catch (const MalformedInput& e) {
    out << Json{{"error", "MalformedInput"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const Error& e) {
    out << Json{{"error", std::string(e.name())}, {"detail", e.detail()}}.dump() << "\n";
    return 1;
  } catch (const Json::exception& e) {
    out << Json{{"error", "MalformedInput"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }
}

}  // namespace qoi
