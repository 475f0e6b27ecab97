#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cornercut/cornercut.hpp"

using namespace cornercut;

namespace {

struct Options {
  std::string instance_path;
  bool approx = false;
  std::string body_arg;
  std::string gamma_arg;
  std::string norm = "l1";
  std::string method = "lp";
  bool explicit_edge = false;
  bool dump_text = false;
  std::string out_path;
  std::string svg_dir;
  std::string plot_body;
  std::string plot_gamma;
  std::vector<long> window;
  double scale = 60;
};

CornerInstance load_instance(const Options& o) {
  if (o.instance_path.empty()) throw UsageError("this command needs --instance");
  return parse_instance(io::text_or_file(o.instance_path));
}

void print(const Json& j) { std::cout << j.dump(2) << "\n"; }

int run_classify(const Options& o) {
  std::optional<Vec2> f;
  if (!o.instance_path.empty()) f = load_instance(o).f;
  Body b = parse_body(io::text_or_file(o.body_arg), f);
  JsonStyle st{o.approx};
  print({{"body", to_json(b, st)}, {"class", to_json(classify(b))}});
  return 0;
}

int run_cut(const Options& o) {
  CornerInstance inst = load_instance(o);
  Body b = parse_body(io::text_or_file(o.body_arg), inst.f);
  Json j = gamma_json(cut_from_body(b, inst), JsonStyle{o.approx});
  j["provenance"] = "body";
  print(j);
  return 0;
}

int run_separate(const Options& o) {
  CornerInstance inst = load_instance(o);
  QVec g = parse_gamma(io::text_or_file(o.gamma_arg));
  JsonStyle st{o.approx};
  Json j = to_json(separate(inst, g), st);
  io::put(j, "gamma", g, st);
  print(j);
  return 0;
}

int run_mincut(const Options& o) {
  CornerInstance inst = load_instance(o);
  JsonStyle st{o.approx};
  Json j{{"norm", o.norm}, {"method", o.method}};
  if (o.method == "search") {
    if (o.norm != "linf") throw UsageError("mincut: --method search only supports --norm linf");
    LinfSearch s = linf_search(inst);
    io::put(j, "gamma", s.gamma, st);
    io::put(j, "value", s.value, st);
    io::put(j, "alpha", s.alpha, st);
    j["denominator_bound"] = s.denominator_bound.get_str();
    j["queries"] = s.queries;
  } else {
    MinNormCut m = min_norm_cut(inst, o.norm == "l1" ? Norm::L1 : Norm::LInf);
    io::put(j, "gamma", m.gamma, st);
    io::put(j, "value", m.value, st);
  }
  print(j);
  return 0;
}

int run_enumerate(const Options& o) {
  CornerInstance inst = load_instance(o);
  FacetList fl = enumerate_facets(inst);
  if (!o.svg_dir.empty()) {
    std::filesystem::create_directories(o.svg_dir);
    for (std::size_t i = 0; i < fl.facets.size(); ++i) {
      std::ofstream out(std::filesystem::path(o.svg_dir) /
                        ("facet_" + std::to_string(i + 1) + ".svg"));
      out << render_svg(inst, fl.facets[i].cut.body);
    }
  }
  print(to_json(fl, JsonStyle{o.approx}));
  return 0;
}

int run_witness(const Options& o) {
  CornerInstance inst = load_instance(o);
  Body b = parse_body(io::text_or_file(o.body_arg), inst.f);
  JsonStyle st{o.approx};
  for (Covering c : {Covering::Singleton, Covering::Full}) {
    FacetPoints Y = facet_covering(b, c);
    auto w = tilt_witness(b, Y, inst);
    if (!w) continue;
    std::optional<std::pair<Body, Body>> pair;
    if (o.explicit_edge) pair = explicit_bodies(*w, b, Y, inst);
    print({{"witness", to_json(*w, st, pair)}});
    return 0;
  }
  print({{"witness", nullptr}, {"reason", "no tilting direction for either facet covering"}});
  return 0;
}

int run_blocking(const Options& o) {
  CornerInstance inst = load_instance(o);
  BlockingSystem sys = build_blocking_system(inst);
  if (o.dump_text) {
    std::cout << dump(sys);
    return 0;
  }
  Json rows = Json::array();
  for (const auto& r : sys.rows)
    rows.push_back({{"basis", {r.I.first + 1, r.I.second + 1}},
                    {"x", io::vec(r.x)},
                    {"coefficients", io::qvec(r.coefficients(sys.k()))}});
  print({{"k", sys.k()}, {"rows", rows}});
  return 0;
}

int run_plot(const Options& o) {
  CornerInstance inst = load_instance(o);
  std::optional<Body> body;
  if (!o.plot_body.empty()) body = parse_body(io::text_or_file(o.plot_body), inst.f);
  if (!o.plot_gamma.empty()) {
    if (body) throw UsageError("plot: give either --body or --gamma");
    GammaBody g = body_from_cut(parse_gamma(io::text_or_file(o.plot_gamma)), inst);
    Polygon p = g.polygon();
    if (!p.contains_strict(inst.f)) throw DomainError("plot: f is not interior to M_gamma");
    body = Body(inst.f, rows_from_polygon(p, inst.f));
  }
  SvgOptions so;
  so.scale = o.scale;
  if (!o.window.empty()) {
    if (o.window.size() != 4 || o.window[0] >= o.window[1] || o.window[2] >= o.window[3])
      throw UsageError("plot: --window expects x0 x1 y0 y1 with x0 < x1 and y0 < y1");
    so.window = Window{o.window[0], o.window[1], o.window[2], o.window[3]};
  }
  std::string svg = render_svg(inst, body, so);
  if (o.out_path.empty()) {
    std::cout << svg;
  } else {
    std::ofstream out(o.out_path);
    if (!out) throw UsageError("cannot write " + o.out_path);
    out << svg;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact two-row corner relaxation cuts: classification, separation, minimum-norm "
               "cuts, facet enumeration and tilting witnesses."};
  app.require_subcommand(1);
  Options o;
  app.add_option("-i,--instance", o.instance_path, "instance JSON file (or inline JSON)");
  app.add_flag("--approx", o.approx, "add decimal renderings (non-authoritative)");

  auto* classify_cmd = app.add_subcommand("classify", "classify a lattice-free body");
  classify_cmd->add_option("body", o.body_arg, "body JSON file (or inline JSON)")->required();

  auto* cut_cmd = app.add_subcommand("cut", "intersection cut of a body");
  cut_cmd->add_option("body", o.body_arg, "body JSON file (or inline JSON)")->required();

  auto* sep_cmd = app.add_subcommand("separate", "decide validity of a cut");
  sep_cmd->add_option("gamma", o.gamma_arg, "gamma JSON file (or inline JSON)")->required();

  auto* min_cmd = app.add_subcommand("mincut", "minimum-norm valid cut");
  min_cmd->add_option("--norm", o.norm, "l1 or linf")->check(CLI::IsMember({"l1", "linf"}));
  min_cmd->add_option("--method", o.method, "lp or search")
      ->check(CLI::IsMember({"lp", "search"}));

  auto* enum_cmd = app.add_subcommand("enumerate", "all facets of the corner hull");
  enum_cmd->add_option("--svg-dir", o.svg_dir, "write one SVG per facet body");

  auto* wit_cmd = app.add_subcommand("witness", "tilting witness for a non-extreme body");
  wit_cmd->add_option("body", o.body_arg, "body JSON file (or inline JSON)")->required();
  wit_cmd->add_flag("--explicit-edge", o.explicit_edge,
                    "complete tilted bodies that pick up lattice points");

  auto* blk_cmd = app.add_subcommand("blocking", "the blocking system");
  blk_cmd->add_flag("--dump", o.dump_text, "one inequality per line");

  auto* plot_cmd = app.add_subcommand("plot", "SVG rendering of the instance");
  plot_cmd->add_option("--out", o.out_path, "output file (default: stdout)");
  plot_cmd->add_option("--body", o.plot_body, "body to draw");
  plot_cmd->add_option("--gamma", o.plot_gamma, "draw M_gamma instead of a body");
  plot_cmd->add_option("--window", o.window, "x0 x1 y0 y1")->expected(4);
  plot_cmd->add_option("--scale", o.scale, "pixels per unit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify_cmd) return run_classify(o);
    if (*cut_cmd) return run_cut(o);
    if (*sep_cmd) return run_separate(o);
    if (*min_cmd) return run_mincut(o);
    if (*enum_cmd) return run_enumerate(o);
    if (*wit_cmd) return run_witness(o);
    if (*blk_cmd) return run_blocking(o);
    if (*plot_cmd) return run_plot(o);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
