// sbill: command-line front end for the symplectic billiards toolkit.

#include <csignal>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "json.hpp"

#include "sbill/casebook.hpp"
#include "sbill/protocol.hpp"
#include "sbill/render.hpp"
#include "sbill/report.hpp"
#include "sbill/smooth.hpp"
#include "sbill/tiles.hpp"

using namespace sbill;
using json = nlohmann::json;

namespace {

constexpr int kOk = 0, kInput = 2, kInconclusive = 3;

bool pretty = false;

void emit(const std::string& kind, json body) {
  const json j = envelope(kind, std::move(body));
  std::cout << (pretty ? j.dump(2) : j.dump()) << '\n';
}

int exit_code(Errc c) {
  switch (c) {
    case Errc::Budget:
    case Errc::NotConverged:
    case Errc::RootFindFailure:
    case Errc::InfiniteC:
    case Errc::FNotClosed:
    case Errc::InconclusiveInput:
      return kInconclusive;
    default:
      return kInput;
  }
}

RenderSpec svg_spec(const std::string& path, RenderSpec::What what) {
  RenderSpec s;
  s.what = what;
  s.output = path;
  return s;
}

SquareSide parse_square_side(const std::string& s) {
  if (s == "v0v1") return SquareSide::V0V1;
  if (s == "v1v2") return SquareSide::V1V2;
  if (s == "v2v3") return SquareSide::V2V3;
  if (s == "v3v0") return SquareSide::V3V0;
  throw Error(Errc::ParseError, "side must be v0v1, v1v2, v2v3 or v3v0");
}

RpcServer* running = nullptr;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact symplectic billiards on polygon pairs"};
  app.require_subcommand(1);
  app.add_flag("--pretty", pretty, "Indent JSON output");

  std::string table, seed, svg, what = "f";
  std::size_t steps = 1000, depth = 2, budget_f = 20000, budget_c = 100000, samples = 1000,
              sample_steps = 20000, tile_budget = 200000;

  auto* iterate = app.add_subcommand("iterate", "Iterate an orbit from a seed pair");
  iterate->add_option("table", table, "table.json or builtin:NAME")->required();
  iterate->add_option("--seed", seed, "\"minus:i:t,plus:j:u\"")->required();
  iterate->add_option("--steps", steps, "Step budget in each direction");
  iterate->add_option("--svg", svg, "Write the orbit drawing here");

  auto* classify_cmd = app.add_subcommand("classify", "Classify a table pair");
  classify_cmd->add_option("table", table)->required();
  classify_cmd->add_option("--budget-f", budget_f, "Point budget for the filled set");
  classify_cmd->add_option("--budget-c", budget_c, "Branch step budget for the critical set");
  classify_cmd->add_option("--samples", samples, "Sampled seeds");
  classify_cmd->add_option("--sample-steps", sample_steps, "Step budget per sampled seed");

  auto* bound_cmd = app.add_subcommand("bound", "Period bound from a closed filled set, with an audit");
  bound_cmd->add_option("table", table)->required();
  bound_cmd->add_option("--samples", samples);
  bound_cmd->add_option("--sample-steps", sample_steps);

  auto* strata = app.add_subcommand("strata", "Filled set, critical set, C-grid or discontinuity set");
  strata->add_option("table", table)->required();
  strata->add_option("--what", what)->check(CLI::IsMember({"f", "c", "cgrid", "n"}));
  strata->add_option("--depth", depth, "Depth for --what n");
  std::size_t strata_budget = 0;
  strata->add_option("--budget", strata_budget, "Point budget (f) or branch step budget (c, cgrid)");
  strata->add_option("--svg", svg);

  auto* tiles_cmd = app.add_subcommand("tiles", "Tile of a seed, or the full decomposition");
  tiles_cmd->add_option("table", table)->required();
  tiles_cmd->add_option("--seed", seed, "Only the tile of this seed");
  tiles_cmd->add_option("--budget", tile_budget, "Step budget per tile");
  tiles_cmd->add_option("--budget-c", budget_c, "Branch step budget for the critical set");
  tiles_cmd->add_option("--svg", svg);

  std::string X, Y;
  bool isolation = false;
  std::size_t iso_samples = 16;
  auto* kite = app.add_subcommand("kite", "The isolated 6-periodic orbit of a crooked kite");
  kite->add_option("--X", X)->required();
  kite->add_option("--Y", Y)->required();
  kite->add_flag("--isolation", isolation, "Also perturb the seed and check isolation");
  kite->add_option("--samples", iso_samples, "Perturbed seeds for --isolation");

  std::size_t scan = 0, max_steps = 100000;
  std::string return_map, kite_point = "plus:0:1/3", side;
  auto* necktie = app.add_subcommand("necktie", "Necktie scan or section return map");
  auto* scan_opt = necktie->add_option("--scan", scan, "Number of random seeds");
  necktie->add_option("--max-steps", max_steps, "Steps per seed");
  auto* rm_opt = necktie->add_option("--return-map", return_map, "t=p/q");
  necktie->add_option("--x", kite_point, "Kite point of the section pair");
  necktie->add_option("--side", side, "v0v1, v1v2, v2v3 or v3v0");
  scan_opt->excludes(rm_opt);

  std::string curves = "reference";
  std::size_t k = 2, restarts = 32;
  std::uint64_t rng_seed = 1;
  auto* smooth_cmd = app.add_subcommand("smooth", "Maximal 2k-periodic orbit of smooth convex curves");
  smooth_cmd->add_option("--curves", curves, "Curve pair JSON file, or 'reference'");
  smooth_cmd->add_option("--k", k)->check(CLI::Range(1, 1000));
  smooth_cmd->add_option("--restarts", restarts);
  smooth_cmd->add_option("--seed", rng_seed);
  smooth_cmd->add_option("--svg", svg);

  int port = 8765;
  std::string host = "127.0.0.1";
  bool stdio = false;
  auto* serve = app.add_subcommand("serve", "Explorer message server");
  serve->add_option("--port", port);
  serve->add_option("--host", host);
  serve->add_flag("--stdio", stdio, "Line-delimited JSON on stdin/stdout instead of HTTP");

  app.add_subcommand("builtins", "List builtin tables");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kInput;
  }

  try {
    if (*iterate) {
      const Billiard B(load_table(table));
      auto [tr, sym] = B.iterate(parse_seed(seed, &B.table()), steps);
      if (!svg.empty())
        write_svg(render_table(B.table(), tr.points, {},
                               svg_spec(svg, RenderSpec::What::TableWithOrbit)),
                  svg_spec(svg, RenderSpec::What::TableWithOrbit));
      emit("trajectory", trajectory_report(B.table(), tr, sym));
    } else if (*classify_cmd) {
      const Billiard B(load_table(table));
      ClassifyOptions co;
      co.f_points = budget_f;
      co.critical.budget = budget_c;
      co.samples = samples;
      co.sample_steps = sample_steps;
      const Classification c = classify(B, co);
      emit("classification", to_json(c));
      if (c.label == Label::Inconclusive) return kInconclusive;
    } else if (*bound_cmd) {
      const Billiard B(load_table(table));
      emit("period_bound", to_json(period_bound_report(B, samples, sample_steps)));
    } else if (*strata) {
      const Billiard B(load_table(table));
      const auto spec = svg_spec(svg, RenderSpec::What::TableWithOrbit);
      if (what == "f") {
        const FilledSet F = filled_set(B, strata_budget ? strata_budget : budget_f, 200);
        if (!svg.empty()) {
          auto marks = F.on(Side::Minus);
          if (!F.single) marks.insert(marks.end(), F.on(Side::Plus).begin(), F.on(Side::Plus).end());
          write_svg(render_table(B.table(), {}, marks, spec), spec);
        }
        emit("filled_set", to_json(F));
      } else if (what == "n") {
        emit("discontinuity", to_json(discontinuity_depth(B, depth)));
      } else {
        CriticalOptions co;
        if (strata_budget) co.budget = strata_budget;
        const CriticalSet C = critical_set(B, co);
        if (what == "c") {
          if (!svg.empty()) {
            auto marks = C.on(Side::Minus);
            if (!C.single) {
              const auto p = C.on(Side::Plus);
              marks.insert(marks.end(), p.begin(), p.end());
            }
            write_svg(render_table(B.table(), {}, marks, spec), spec);
          }
          emit("critical_set", to_json(C));
        } else {
          const GridReport G = c_grid(B, C);
          if (!svg.empty()) {
            const auto gs = svg_spec(svg, RenderSpec::What::CGrid);
            write_svg(render_cgrid(B.table(), G, gs), gs);
          }
          emit("c_grid", to_json(G));
        }
      }
    } else if (*tiles_cmd) {
      const Billiard B(load_table(table));
      TileOptions to;
      to.budget = tile_budget;
      if (!seed.empty()) {
        emit("tile", to_json(tile_of(B, parse_seed(seed, &B.table()), to)));
      } else {
        CriticalOptions co;
        co.budget = budget_c;
        const Decomposition D = decompose(B, critical_set(B, co), to);
        if (!svg.empty()) {
          const auto ds = svg_spec(svg, RenderSpec::What::PhaseSpaceDecomposition);
          write_svg(render_decomposition(B.table(), D, ds), ds);
        }
        emit("decomposition", to_json(D));
      }
    } else if (*kite) {
      const KiteOrbit K = kite_orbit6(Rat::parse(X), Rat::parse(Y));
      json j = to_json(K);
      if (isolation) j["isolation"] = to_json(kite_isolation_check(K, iso_samples));
      emit("kite_orbit", j);
    } else if (*necktie) {
      if (!return_map.empty()) {
        if (!return_map.starts_with("t="))
          throw Error(Errc::ParseError, "--return-map expects t=p/q");
        const Rat t = Rat::parse(return_map.substr(2));
        const EdgePoint x = parse_edge_point(kite_point);
        const ReturnResult r = side.empty()
                                   ? necktie_return_map(x, t)
                                   : necktie_return_map(x, parse_square_side(side), t);
        emit("necktie_return", to_json(r));
      } else if (scan > 0) {
        emit("necktie_scan", to_json(necktie_no_period_scan(scan, max_steps)));
      } else {
        throw Error(Errc::InvalidArgument, "necktie needs --scan N or --return-map t=p/q");
      }
    } else if (*smooth_cmd) {
      smooth::CurvePair P = smooth::reference_pair();
      if (curves != "reference") {
        std::ifstream in(curves);
        if (!in) throw Error(Errc::ParseError, "cannot open " + curves);
        json j;
        try {
          in >> j;
        } catch (const json::exception& e) {
          throw Error(Errc::ParseError, e.what());
        }
        P = smooth::CurvePair::from_json(j);
      }
      smooth::FindOptions fo;
      fo.restarts = restarts;
      fo.seed = rng_seed;
      const smooth::SmoothOrbit o = smooth::find_periodic(P, k, fo);
      if (!svg.empty()) {
        const auto ss = svg_spec(svg, RenderSpec::What::SmoothOrbit);
        write_svg(render_smooth(P, o, ss), ss);
      }
      json j = smooth::to_json(o);
      j["curves"] = P.to_json();
      emit("smooth_orbit", j);
    } else if (*serve) {
      Session session;
      if (stdio) {
        serve_stream(session, std::cin, std::cout);
      } else {
        RpcServer server(session);
        const int bound = server.bind(host, port);
        running = &server;
        std::signal(SIGINT, [](int) {
          if (running) running->stop();
        });
        std::cerr << "listening on http://" << host << ":" << bound << "/rpc\n";
        server.listen();
        running = nullptr;
      }
    } else {
      emit("builtins", json{{"names", builtin_names()}});
    }
  } catch (const Error& e) {
    std::cerr << envelope("error", error_report(e)).dump() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << envelope("error", json{{"code", "Internal"}, {"message", e.what()}}).dump() << '\n';
    return 1;
  }
  return kOk;
}
