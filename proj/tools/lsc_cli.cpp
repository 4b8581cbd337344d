// lsc: generate Latin super cubes and check the brick partition laws on
// them (distribution, distance, RBC capacity, conjugacy, stochastic form).

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "lsc/analysis.hpp"
#include "lsc/io.hpp"
#include "lsc/latin.hpp"
#include "lsc/stochastic.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct IoFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream f(path);
  if (!f) throw IoFailure("cannot open " + path);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw IoFailure("cannot write " + path);
  f << text;
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// --brick lo:hi,lo:hi,...  /  --sizes a,b,c (origin-anchored shorthand)
lsc::Brick parse_brick(const lsc::BoardShape& shape, const std::string& brick_spec,
                       const std::string& sizes_spec) {
  if (brick_spec.empty() == sizes_spec.empty())
    throw CLI::ValidationError("exactly one of --brick / --sizes is required");
  std::vector<lsc::AxisInterval> ivals;
  std::stringstream ss(brick_spec.empty() ? sizes_spec : brick_spec);
  std::string part;
  while (std::getline(ss, part, ',')) {
    auto colon = part.find(':');
    try {
      if (brick_spec.empty()) {
        ivals.push_back({1, std::stoi(part)});
      } else {
        if (colon == std::string::npos)
          throw CLI::ValidationError("--brick needs lo:hi per axis");
        ivals.push_back({std::stoi(part.substr(0, colon)), std::stoi(part.substr(colon + 1))});
      }
    } catch (const std::invalid_argument&) {
      throw CLI::ValidationError("bad brick component '" + part + "'");
    }
  }
  if (static_cast<int>(ivals.size()) != shape.d)
    throw CLI::ValidationError("brick has " + std::to_string(ivals.size()) +
                               " axes, the board has " + std::to_string(shape.d));
  return lsc::Brick(shape, std::move(ivals));
}

// validation gate: analysis never runs on a bad placement
lsc::Lsc load_lsc(const std::string& path) {
  std::istringstream in(slurp(path));
  lsc::io::RawLsc raw = lsc::io::read_lsc_raw(in);
  auto res = lsc::validate_lsc(raw.shape, raw.cells);
  if (!res.ok) {
    std::cerr << "invalid LSC: " << res.violations.size() << " files violated\n";
    size_t shown = 0;
    for (const auto& v : res.violations) {
      if (shown++ == 8) {
        std::cerr << "  ...\n";
        break;
      }
      std::cerr << "  axis " << v.axis << " file (";
      for (int j = 0; j < raw.shape.d; ++j) {
        if (j) std::cerr << ",";
        if (j + 1 == v.axis)
          std::cerr << ".";
        else
          std::cerr << v.file.coords[j];
      }
      std::cerr << ") holds " << v.count << " rooks\n";
    }
    std::exit(kExitCheckFailed);
  }
  return lsc::Lsc(raw.shape, std::move(raw.cells));
}

std::string square_rows(const lsc::LatinSquare& q) {
  std::string out;
  for (int i = 1; i <= q.n(); ++i) {
    for (int j = 1; j <= q.n(); ++j) out += (j > 1 ? " " : "") + std::to_string(q.at(i, j));
    out += '\n';
  }
  return out;
}

ordered_json square_json(const lsc::LatinSquare& q) {
  ordered_json rows = ordered_json::array();
  for (int i = 1; i <= q.n(); ++i) {
    ordered_json row = ordered_json::array();
    for (int j = 1; j <= q.n(); ++j) row.push_back(q.at(i, j));
    rows.push_back(row);
  }
  return rows;
}

int run_gen(int n, int d, int offset, std::optional<uint64_t> seed, const std::string& out) {
  lsc::Lsc l = lsc::cyclic_lsc(lsc::BoardShape(n, d), offset);
  if (seed) l = lsc::random_latin_transform(l, *seed);
  std::ostringstream text;
  lsc::io::write_lsc(text, l);
  emit(out, text.str());
  return kExitOk;
}

int run_verify(const std::string& in, const std::string& brick_spec, const std::string& sizes_spec,
               const std::string& format) {
  lsc::Lsc l = load_lsc(in);
  lsc::Brick t0 = parse_brick(l.shape(), brick_spec, sizes_spec);
  auto reports = lsc::verify_distribution(l, t0);

  bool all_ok = true;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : reports) {
      arr.push_back({{"mask", r.mask},
                     {"volume", r.volume},
                     {"count", r.count},
                     {"predicted", r.predicted.str()},
                     {"deflection", r.deflection.str()},
                     {"ok", r.match}});
      all_ok = all_ok && r.match;
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "mask volume count predicted deflection status\n";
    for (const auto& r : reports) {
      all_ok = all_ok && r.match;
      std::cout << r.mask << ' ' << r.volume << ' ' << r.count << ' ' << r.predicted.str() << ' '
                << r.deflection.str() << ' ' << (r.match ? "OK" : "FAIL") << '\n';
    }
  }
  return all_ok ? kExitOk : kExitCheckFailed;
}

int run_distance(const std::string& in, const std::string& brick_spec,
                 const std::string& sizes_spec, const std::string& format) {
  lsc::Lsc l = load_lsc(in);
  lsc::Brick t0 = parse_brick(l.shape(), brick_spec, sizes_spec);
  auto rep = lsc::distance_sum(l, t0);

  if (format == "json") {
    ordered_json spheres = ordered_json::array();
    for (size_t k = 0; k < rep.rook_counts.size(); ++k)
      spheres.push_back({{"radius", k},
                         {"volume", rep.sphere_volumes[k]},
                         {"rooks", rep.rook_counts[k]}});
    ordered_json out{{"spheres", spheres},
                     {"h", rep.h},
                     {"closed_form", rep.h_closed_form},
                     {"ok", rep.match}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "radius volume rooks\n";
    for (size_t k = 0; k < rep.rook_counts.size(); ++k)
      std::cout << k << ' ' << rep.sphere_volumes[k] << ' ' << rep.rook_counts[k] << '\n';
    std::cout << "h " << rep.h << '\n';
    std::cout << "closed_form " << rep.h_closed_form << '\n';
    std::cout << "status " << (rep.match ? "OK" : "FAIL") << '\n';
  }
  return rep.match ? kExitOk : kExitCheckFailed;
}

int run_rbc(const std::string& in, const std::string& brick_spec, const std::string& sizes_spec,
            const std::string& format) {
  lsc::Lsc l = load_lsc(in);
  lsc::Brick t0 = parse_brick(l.shape(), brick_spec, sizes_spec);
  auto v = lsc::check_rbc(l, t0);

  bool ok = v.ok && v.layers_balanced;
  ordered_json out{{"dim", v.dim},
                   {"c0", v.count_origin},
                   {v.dim == 2 ? "c2" : "c3", v.count_remote}};
  if (v.dim == 2) {
    out["difference"] = v.count_origin - v.count_remote;
    out["ryser"] = v.expected;
    out["balanced"] = v.ok;
  } else {
    auto h = lsc::hinge(t0);
    auto rooks = lsc::hinge_rook_identity(l, h);
    ok = ok && h.volume_identity && rooks.ok && rooks.direct == v.expected;
    out["sum"] = v.count_origin + v.count_remote;
    out["capacity"] = v.expected;
    out["stuffed"] = v.ok;
    out["layers_balanced"] = v.layers_balanced;
    out["hinge_capacity"] = h.capacity_via_volumes;
    out["hinge_volume_identity"] = h.volume_identity;
    out["hinge_rooks"] = rooks.via_unions;
  }
  out["ok"] = ok;

  if (format == "json") {
    std::cout << out.dump(2) << '\n';
  } else {
    for (auto& [key, val] : out.items()) {
      if (val.is_boolean())
        std::cout << key << ' ' << (val.get<bool>() ? "OK" : "FAIL") << '\n';
      else
        std::cout << key << ' ' << val << '\n';
    }
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_conjugates(const std::string& in, const std::string& format) {
  std::istringstream stream(slurp(in));
  lsc::LatinSquare q = lsc::io::read_latin_square(stream);

  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (lsc::CoordPerm p : lsc::kConjugateOrder)
      arr.push_back({{"label", lsc::label(p)}, {"rows", square_json(lsc::conjugate(q, p))}});
    std::cout << arr.dump(2) << '\n';
  } else {
    bool first = true;
    for (lsc::CoordPerm p : lsc::kConjugateOrder) {
      if (!first) std::cout << '\n';
      first = false;
      std::cout << lsc::label(p) << '\n' << square_rows(lsc::conjugate(q, p));
    }
  }
  return kExitOk;
}

int run_orientations(const std::string& in, const std::string& format) {
  std::istringstream stream(slurp(in));
  lsc::LatinSquare q = lsc::io::read_latin_square(stream);
  if (q.n() > 4)
    throw CLI::ValidationError("orientations is guarded at order <= 4");

  lsc::Lsc cube = lsc::compose(q);
  auto projections = lsc::all_orientation_projections(cube);
  const auto& table = lsc::orientation_table();

  bool all_ok = true;
  ordered_json arr = ordered_json::array();
  for (size_t i = 0; i < projections.size(); ++i) {
    bool para = lsc::is_paratopic(projections[i], q);
    all_ok = all_ok && para;
    if (format == "json") {
      arr.push_back({{"orientation", i},
                     {"word", table[i].word},
                     {"rows", square_json(projections[i])},
                     {"paratopic", para}});
    } else {
      std::cout << "orientation " << i << " word "
                << (table[i].word.empty() ? "-" : table[i].word) << " paratopic "
                << (para ? "OK" : "FAIL") << '\n'
                << square_rows(projections[i]);
    }
  }
  if (format == "json")
    std::cout << arr.dump(2) << '\n';
  else
    std::cout << "paratopic " << (all_ok ? "OK" : "FAIL") << '\n';
  return all_ok ? kExitOk : kExitCheckFailed;
}

int run_stochastic_check(const std::string& in, const std::string& brick_spec,
                         const std::string& sizes_spec, double tol, const std::string& format) {
  std::istringstream stream(slurp(in));
  lsc::StochasticTensor t = lsc::io::read_tensor(stream, tol);
  lsc::Brick t0 = parse_brick(t.shape(), brick_spec, sizes_spec);
  auto check = lsc::verify_distribution_stochastic(t, t0);
  bool ok = check.max_abs_error <= tol && check.remote_integrality_error <= tol;

  if (format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& r : check.rows)
      rows.push_back({{"mask", r.mask},
                      {"volume", r.volume},
                      {"mass", r.mass},
                      {"predicted", r.predicted},
                      {"error", r.error}});
    ordered_json out{{"bricks", rows},
                     {"max_abs_error", check.max_abs_error},
                     {"integrality_error", check.remote_integrality_error},
                     {"tolerance", tol},
                     {"ok", ok}};
    std::cout << out.dump(2) << '\n';
  } else {
    std::cout << "max_abs_error " << fmt_double(check.max_abs_error) << '\n';
    std::cout << "integrality_error " << fmt_double(check.remote_integrality_error) << '\n';
    std::cout << "tolerance " << fmt_double(tol) << '\n';
    std::cout << "status " << (ok ? "OK" : "FAIL") << '\n';
  }
  return ok ? kExitOk : kExitCheckFailed;
}

int run_identity(int max_d, const std::string& format) {
  if (max_d < 2 || max_d > 64)
    throw CLI::ValidationError("--max-d must lie in 2..64");
  bool all_zero = true;
  if (format == "json") {
    ordered_json arr = ordered_json::array();
    for (int d = 2; d <= max_d; ++d) {
      long long v = lsc::binomial_alternating_moment(d);
      all_zero = all_zero && v == 0;
      arr.push_back({{"d", d}, {"value", v}});
    }
    std::cout << arr.dump(2) << '\n';
  } else {
    std::cout << "d value\n";
    for (int d = 2; d <= max_d; ++d) {
      long long v = lsc::binomial_alternating_moment(d);
      all_zero = all_zero && v == 0;
      std::cout << d << ' ' << v << '\n';
    }
  }
  return all_zero ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Latin super cubes: generation and exact verification of the brick partition laws"};
  app.require_subcommand(1);

  int n = 0, d = 0, offset = 0, max_d = 20;
  std::optional<uint64_t> seed;
  double tol = 1e-8;
  std::string in = "-", out = "-", brick_spec, sizes_spec, format = "text";

  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
  };
  auto add_brick = [&](CLI::App* sub) {
    sub->add_option("--brick", brick_spec, "brick as lo:hi,lo:hi,... (1-based, inclusive)");
    sub->add_option("--sizes", sizes_spec, "origin-anchored brick as edge lengths a,b,...");
  };

  CLI::App* gen = app.add_subcommand("gen", "write a cyclic LSC, optionally layer-shuffled");
  gen->add_option("--n", n, "board order")->required();
  gen->add_option("--d", d, "board dimension")->required();
  gen->add_option("--offset", offset, "cyclic offset (mod n)")->capture_default_str();
  gen->add_option("--seed", seed, "apply a seeded random layer permutation per axis");
  gen->add_option("--out", out, "output file, - for stdout")->capture_default_str();

  CLI::App* verify = app.add_subcommand("verify", "check the distribution laws on a brick partition");
  verify->add_option("--in", in, "LSC file, - for stdin")->capture_default_str();
  add_brick(verify);
  add_format(verify);

  CLI::App* distance = app.add_subcommand("distance", "sum of rook distances from a brick");
  distance->add_option("--in", in, "LSC file")->capture_default_str();
  add_brick(distance);
  add_format(distance);

  CLI::App* rbc = app.add_subcommand("rbc", "balanced/stuffed verdicts for a remote brick couple");
  rbc->add_option("--in", in, "LSC file")->capture_default_str();
  add_brick(rbc);
  add_format(rbc);

  CLI::App* conj = app.add_subcommand("conjugates", "print the six conjugates of a Latin square");
  conj->add_option("--in", in, "Latin square file")->capture_default_str();
  add_format(conj);

  CLI::App* orient = app.add_subcommand("orientations",
                                        "24 cube orientation projections with paratopy verdicts");
  orient->add_option("--in", in, "Latin square file")->capture_default_str();
  add_format(orient);

  CLI::App* stoch = app.add_subcommand("stochastic-check",
                                       "distribution law on a stochastic tensor");
  stoch->add_option("--in", in, "tensor file")->capture_default_str();
  add_brick(stoch);
  stoch->add_option("--tol", tol, "tolerance for errors and file sums")->capture_default_str();
  add_format(stoch);

  CLI::App* ident = app.add_subcommand("identity", "alternating binomial moments");
  ident->add_option("--max-d", max_d, "print d = 2..max-d")->capture_default_str();
  add_format(ident);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\nrun with --help for usage\n";
    return kExitUsage;
  }

  try {
    if (gen->parsed()) return run_gen(n, d, offset, seed, out);
    if (verify->parsed()) return run_verify(in, brick_spec, sizes_spec, format);
    if (distance->parsed()) return run_distance(in, brick_spec, sizes_spec, format);
    if (rbc->parsed()) return run_rbc(in, brick_spec, sizes_spec, format);
    if (conj->parsed()) return run_conjugates(in, format);
    if (orient->parsed()) return run_orientations(in, format);
    if (stoch->parsed()) return run_stochastic_check(in, brick_spec, sizes_spec, tol, format);
    if (ident->parsed()) return run_identity(max_d, format);
  } catch (const IoFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const lsc::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const lsc::LatinError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {  // domain, coordinate, dimension, size guards
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  }
  return kExitOk;
}
