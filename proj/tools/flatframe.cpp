// flatframe: catalog queries, frame enumeration, matching runs and
// certifications from the command line.
//
// Exit codes: 0 certified/matched, 1 refuted/infeasible, 2 budget exhausted,
// 3 input error (one-line diagnostic on stderr).

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "flatframe/catalog.hpp"
#include "flatframe/common.hpp"
#include "flatframe/incidence.hpp"
#include "flatframe/jsonio.hpp"
#include "flatframe/matcher.hpp"
#include "flatframe/oracle.hpp"
#include "flatframe/root_system.hpp"
#include "flatframe/singular.hpp"

namespace ff = flatframe;
using ff::jsonio::json;

namespace {

ff::Vec parse_vector(const std::string& s) {
  ff::Vec v;
  std::string cur;
  auto flush = [&] {
    if (cur.empty()) ff::fail(ff::Errc::InputError, "empty vector coordinate");
    try {
      v.push_back(std::stoll(cur));
    } catch (const std::exception&) {
      ff::fail(ff::Errc::InputError, "bad vector coordinate: " + cur);
    }
    cur.clear();
  };
  for (char c : s) {
    if (c == ',') {
      flush();
    } else if (!isspace(static_cast<unsigned char>(c)) && c != '(' && c != ')') {
      cur += c;
    }
  }
  flush();
  return v;
}

std::string cols_str(const std::vector<int>& cols) {
  std::string s = "[";
  for (size_t i = 0; i < cols.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(cols[i]);
  }
  return s + "]";
}

void print_match_text(const ff::matcher::MatchResult& r) {
  std::cout << "status: " << r.status << "\n";
  for (const auto& t : r.trace) {
    std::cout << "stage " << t.stage << ": row " << t.row << " <- cols "
              << cols_str(t.cols) << "; remaining popcounts "
              << cols_str(t.remaining_popcounts) << "\n";
  }
  if (r.failure) {
    std::cout << "failed at stage " << r.failure->stage << ": row " << r.failure->row
              << " had " << r.failure->remaining << " free columns left\n";
  }
  if (r.matched()) {
    std::cout << "assignment:\n";
    for (size_t i = 0; i < r.assignment.size(); ++i)
      std::cout << "  row " << i << ": " << cols_str(r.assignment[i]) << "\n";
  }
  for (const auto& n : r.notes) std::cout << "note: " << n << "\n";
}

void print_report_text(const ff::oracle::CertificationReport& r, const std::string& ind) {
  std::cout << ind << "space: " << r.space_id << "\n";
  std::cout << ind << "status: " << r.status << "\n";
  std::cout << ind << "method: " << r.method << "\n";
  std::cout << ind << "frames examined: " << r.frames_examined
            << (r.up_to_weyl ? " (up to Weyl symmetry)" : "") << "\n";
  if (r.greedy.feasible_frames > 0) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "%.6f", r.greedy.fraction());
    std::cout << ind << "greedy: " << r.greedy.feasible_frames
              << " feasible frames, repair matched " << r.greedy.repair_matched
              << " (fraction " << buf << "), augmenting recovered "
              << r.greedy.augmenting_matched << "\n";
  }
  if (r.counterexample) {
    const auto& ce = *r.counterexample;
    std::cout << ind << "counterexample:\n";
    for (const auto& v : ce.frame) std::cout << ind << "  " << ff::vec_str(v) << "\n";
    if (!ce.line_indices.empty())
      std::cout << ind << "  lines: " << cols_str(ce.line_indices) << "\n";
    std::cout << ind << "  certificate: rows " << cols_str(ce.certificate.row_subset)
              << ", |N| = " << ce.certificate.neighborhood.size() << ", demand sum "
              << ce.certificate.demand_sum << "\n";
  }
  for (const auto& n : r.notes) std::cout << ind << "note: " << n << "\n";
  if (!r.factors.empty()) {
    std::cout << ind << "factors:\n";
    for (const auto& f : r.factors) print_report_text(f, ind + "  ");
  }
}

int report_exit(const ff::oracle::CertificationReport& r) {
  if (r.status == "certified") return 0;
  if (r.status == "refuted") return 1;
  return 2;  // budget_exhausted
}

int run_catalog(bool json_out, bool csv_out) {
  if (csv_out) {
    std::cout << ff::jsonio::catalog_csv();
    return 0;
  }
  if (json_out) {
    std::cout << ff::jsonio::dump(ff::jsonio::catalog_json());
    return 0;
  }
  std::printf("%-16s %-8s %5s %6s %5s %9s  %s\n", "id", "family", "rank", "dim_x", "m",
              "min_qdim", "aliases");
  auto cat = ff::jsonio::catalog_json();
  for (const auto& row : cat) {
    auto d = ff::catalog::lookup(row.at("id").get<std::string>());
    std::string aliases;
    for (size_t i = 0; i < d->aliases.size(); ++i)
      aliases += (i ? ", " : "") + d->aliases[i];
    std::printf("%-16s %-8s %5d %6lld %5lld %9lld  %s\n", d->id.c_str(),
                d->family.c_str(), d->rank, static_cast<long long>(d->dim_x),
                static_cast<long long>(d->dim_x - d->rank),
                static_cast<long long>(d->recorded_min_qdim), aliases.c_str());
  }
  return 0;
}

int run_dims(const std::string& space, bool json_out) {
  auto d = ff::catalog::lookup(space);
  auto rays = ff::singular::maximally_singular_rays(d);
  if (json_out) {
    json j = json::object();
    j["space"] = d->id;
    j["rank"] = d->rank;
    j["dim_x"] = d->dim_x;
    j["m"] = d->dim_x - d->rank;
    json jr = json::array();
    for (const auto& r : rays) jr.push_back(ff::jsonio::ray_json(r));
    j["rays"] = std::move(jr);
    std::cout << ff::jsonio::dump(j);
    return 0;
  }
  std::cout << "space: " << d->id << "\n";
  std::cout << "rank: " << d->rank << "\n";
  std::cout << "dim_x: " << d->dim_x << "\n";
  std::cout << "m: " << (d->dim_x - d->rank) << "\n";
  std::cout << "maximally singular rays:\n";
  for (size_t i = 0; i < rays.size(); ++i) {
    std::cout << "  w_" << (i + 1) << " = " << ff::vec_str(rays[i].vector)
              << "  q_dim = " << rays[i].q_dim << "\n";
  }
  return 0;
}

int run_qdim(const std::string& space, const std::string& vec_s, bool json_out) {
  auto d = ff::catalog::lookup(space);
  ff::Vec v = parse_vector(vec_s);
  ff::Int q = ff::singular::q_dim(d, v);
  if (json_out) {
    json j = json::object();
    j["space"] = d->id;
    j["vector"] = ff::jsonio::vec_json(v);
    j["q_dim"] = q;
    std::cout << ff::jsonio::dump(j);
    return 0;
  }
  std::cout << "space: " << d->id << "\n";
  std::cout << "vector: " << ff::vec_str(v) << "\n";
  std::cout << "q_dim: " << q << "\n";
  return 0;
}

int run_frames(const std::string& space, const std::string& up_to_weyl,
               std::uint64_t budget, std::uint64_t limit, long long pick,
               bool json_out) {
  auto d = ff::catalog::lookup(space);
  auto lines = ff::singular_lines(d->roots);
  ff::incidence::EnumOptions opt;
  opt.up_to_weyl = (up_to_weyl == "on");
  opt.budget = budget;

  if (pick >= 0) {
    // Emit the picked frame's full matrix JSON (for --matrix round trips).
    std::optional<ff::singular::Frame> picked;
    std::uint64_t seen = 0;
    ff::incidence::enumerate_singular_frames(
        d, lines,
        [&](const std::vector<int>& idx) {
          if (static_cast<long long>(seen) == pick) {
            ff::singular::Frame f;
            for (int i : idx) f.push_back(lines[i]);
            picked = std::move(f);
            return false;
          }
          ++seen;
          return true;
        },
        opt);
    if (!picked)
      ff::fail(ff::Errc::InputError,
               "--pick " + std::to_string(pick) + " is beyond the last frame");
    auto a = ff::incidence::incidence_matrix(d, *picked);
    std::cout << ff::jsonio::dump(ff::jsonio::matrix_json(a));
    return 0;
  }

  std::vector<std::vector<int>> kept;
  std::uint64_t emitted_total = 0;
  auto stats = ff::incidence::enumerate_singular_frames(
      d, lines,
      [&](const std::vector<int>& idx) {
        if (limit == 0 || kept.size() < limit) kept.push_back(idx);
        ++emitted_total;
        return true;
      },
      opt);

  if (json_out) {
    json j = json::object();
    j["space"] = d->id;
    j["up_to_weyl"] = opt.up_to_weyl;
    json fr = json::array();
    for (const auto& idx : kept) {
      json one = json::object();
      one["lines"] = json::array();
      for (int i : idx) one["lines"].push_back(i);
      json vecs = json::array();
      for (int i : idx) vecs.push_back(ff::jsonio::vec_json(lines[i]));
      one["frame"] = std::move(vecs);
      fr.push_back(std::move(one));
    }
    j["frames"] = std::move(fr);
    json st = json::object();
    st["line_count"] = static_cast<std::uint64_t>(stats.line_count);
    st["emitted"] = stats.emitted;
    st["nodes"] = stats.nodes;
    st["complete"] = stats.complete;
    st["weyl_reduced"] = stats.weyl_reduced;
    j["stats"] = std::move(st);
    std::cout << ff::jsonio::dump(j);
  } else {
    std::cout << "space: " << d->id << "\n";
    std::cout << "singular lines: " << stats.line_count << "\n";
    for (size_t k = 0; k < kept.size(); ++k) {
      std::cout << "frame " << k << ": lines " << cols_str(kept[k]) << " ";
      for (int i : kept[k]) std::cout << " " << ff::vec_str(lines[i]);
      std::cout << "\n";
    }
    if (emitted_total > kept.size())
      std::cout << "(" << (emitted_total - kept.size()) << " more not shown)\n";
    std::cout << "emitted: " << stats.emitted << (stats.complete ? "" : " (stopped early)")
              << (stats.weyl_reduced ? " (up to Weyl symmetry)" : "") << "\n";
  }
  return stats.complete ? 0 : 2;
}

int run_match(const std::string& path, const std::string& mode_s, bool json_out) {
  auto j = ff::jsonio::parse_file(path);
  auto a = ff::jsonio::matrix_from_json(j);
  ff::matcher::MatchMode mode = ff::matcher::MatchMode::Repair;
  if (mode_s == "faithful") mode = ff::matcher::MatchMode::Faithful;
  else if (mode_s == "repair") mode = ff::matcher::MatchMode::Repair;
  else if (mode_s == "augmenting") mode = ff::matcher::MatchMode::Augmenting;
  else ff::fail(ff::Errc::InputError, "unknown mode: " + mode_s);
  auto r = ff::matcher::staged_greedy(a, mode);
  if (json_out) std::cout << ff::jsonio::dump(ff::jsonio::match_json(r));
  else print_match_text(r);
  return r.matched() ? 0 : 1;
}

int run_certify(const std::string& space, bool exhaustive, std::uint64_t budget,
                int workers, const std::string& up_to_weyl, bool json_out) {
  auto d = ff::catalog::lookup(space);
  ff::oracle::CertifyOptions opt;
  opt.budget = budget;
  opt.workers = workers;
  opt.up_to_weyl = (up_to_weyl == "on");
  opt.force_exhaustive = exhaustive;
  auto r = ff::oracle::certify_property_e(d, opt);
  if (json_out) std::cout << ff::jsonio::dump(ff::jsonio::certification_json(r));
  else print_report_text(r, "");
  return report_exit(r);
}

int run_weak(const std::string& space, const std::string& profile_s,
             std::uint64_t budget, bool json_out) {
  auto d = ff::catalog::lookup(space);
  ff::oracle::WeakProfile profile;
  if (profile_s == "one-regular") profile = ff::oracle::WeakProfile::OneRegularRestThree;
  else if (profile_s == "all-regular") profile = ff::oracle::WeakProfile::AllRegular;
  else ff::fail(ff::Errc::InputError, "unknown profile: " + profile_s);
  ff::oracle::CertifyOptions opt;
  opt.budget = budget;
  auto r = ff::oracle::certify_weak_matching(d, profile, opt);
  if (json_out) std::cout << ff::jsonio::dump(ff::jsonio::certification_json(r));
  else print_report_text(r, "");
  return report_exit(r);
}

int run_txtable(int rank, bool csv_out, bool json_out) {
  if (rank != 2)
    ff::fail(ff::Errc::NotRankTwo, "the invariant table is defined for rank 2 only");
  if (csv_out) {
    std::cout << ff::jsonio::txtable_csv();
    return 0;
  }
  if (json_out) {
    std::cout << ff::jsonio::dump(ff::jsonio::txtable_json());
    return 0;
  }
  std::printf("%-16s %6s %9s %4s %6s  %s\n", "space", "dim_x", "min_qdim", "t_X",
              "bound", "exceptional");
  for (const auto& row : ff::jsonio::txtable_json()) {
    std::printf("%-16s %6lld %9lld %4lld %6lld  %s\n",
                row.at("space").get<std::string>().c_str(),
                row.at("dim_x").get<long long>(), row.at("min_qdim").get<long long>(),
                row.at("t_x").get<long long>(), row.at("degree_bound").get<long long>(),
                row.at("exceptional").get<bool>() ? "yes" : "no");
  }
  return 0;
}

int run_split(const std::string& path, int n1, bool json_out) {
  auto j = ff::jsonio::parse_file(path);
  ff::incidence::SplitAssignment s;
  try {
    if (j.is_object() && j.contains("matrix")) {
      // Raw numeric matrix: {"matrix": [[...], ...]}, split after row n1.
      if (n1 <= 0)
        ff::fail(ff::Errc::InputError, "--n1 is required for raw matrix input");
      std::vector<ff::Vec> m;
      for (const auto& row : j.at("matrix")) m.push_back(ff::jsonio::vec_from_json(row));
      s = ff::incidence::split_product_frame(m, n1);
    } else {
      // Matrix JSON carrying space + frame of a product space.
      if (!j.is_object() || !j.contains("space") || !j.contains("frame"))
        ff::fail(ff::Errc::InputError, "split needs {matrix} or {space, frame}");
      auto d = ff::catalog::lookup(j.at("space").get<std::string>());
      ff::singular::Frame f;
      for (const auto& v : j.at("frame")) f.push_back(ff::jsonio::vec_from_json(v));
      s = ff::incidence::split_product_frame(d, f);
    }
  } catch (const ff::Error& e) {
    if (e.code() == ff::Errc::NotAFrame) {
      std::cerr << "error: " << e.what() << "\n";
      return 1;  // no valid split: report as infeasible, not as input error
    }
    throw;
  }
  if (json_out) {
    std::cout << ff::jsonio::dump(ff::jsonio::split_json(s));
  } else {
    std::cout << "rows_first: " << cols_str(s.rows_first)
              << "  minor_first: " << s.minor_first.str() << "\n";
    std::cout << "rows_second: " << cols_str(s.rows_second)
              << "  minor_second: " << s.minor_second.str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"flatframe: singular frames and three-per-row matchings"};
  app.require_subcommand(1);

  bool json_out = false, csv_out = false, exhaustive = false;
  std::uint64_t budget = 0, limit = 20;
  long long pick = -1;
  int workers = 1, rank = 2, n1 = 0;
  std::string space, vec_s, matrix_path;
  std::string mode_s = "repair", up_to_weyl = "on", profile_s = "one-regular";

  auto add_json = [&](CLI::App* sc) { sc->add_flag("--json", json_out, "JSON output"); };

  auto* sc_catalog = app.add_subcommand("catalog", "List every catalogued space");
  add_json(sc_catalog);
  sc_catalog->add_flag("--csv", csv_out, "CSV output");

  auto* sc_dims = app.add_subcommand("dims", "Rank, dimension and ray dimensions");
  sc_dims->add_option("space", space, "space id, e.g. \"Sp(6,R)\"")->required();
  add_json(sc_dims);

  auto* sc_qdim = app.add_subcommand("qdim", "dim Q_v for a vector in the flat");
  sc_qdim->add_option("space", space, "space id")->required();
  sc_qdim->add_option("--vector", vec_s, "comma-separated coordinates, e.g. 1,0,-1")
      ->required();
  add_json(sc_qdim);

  auto* sc_frames = app.add_subcommand("frames", "Enumerate maximally singular frames");
  sc_frames->add_option("space", space, "space id")->required();
  sc_frames->add_option("--up-to-weyl", up_to_weyl, "on|off (default on)")
      ->check(CLI::IsMember({"on", "off"}));
  sc_frames->add_option("--budget", budget, "max frames examined (0: unlimited)")
      ->envname("FLATFRAME_BUDGET");
  sc_frames->add_option("--limit", limit, "max frames printed (0: all; default 20)");
  sc_frames->add_option("--pick", pick, "emit frame #N as full matrix JSON");
  add_json(sc_frames);

  auto* sc_match = app.add_subcommand("match", "Run the staged greedy matcher");
  sc_match->add_option("--matrix", matrix_path, "matrix JSON file")->required();
  sc_match->add_option("--mode", mode_s, "faithful|repair|augmenting (default repair)")
      ->check(CLI::IsMember({"faithful", "repair", "augmenting"}));
  add_json(sc_match);

  auto* sc_certify = app.add_subcommand("certify", "Certify or refute the matching property");
  sc_certify->add_option("space", space, "space id")->required();
  sc_certify->add_flag("--exhaustive", exhaustive, "skip fast paths, sweep all frames");
  sc_certify->add_option("--budget", budget, "max frames examined (0: unlimited)")
      ->envname("FLATFRAME_BUDGET");
  sc_certify->add_option("--workers", workers, "worker threads (default 1)")
      ->check(CLI::PositiveNumber);
  sc_certify->add_option("--up-to-weyl", up_to_weyl, "on|off (default on)")
      ->check(CLI::IsMember({"on", "off"}));
  add_json(sc_certify);

  auto* sc_weak = app.add_subcommand("weak", "Certify the weak matching property");
  sc_weak->add_option("space", space, "space id")->required();
  sc_weak->add_option("--profile", profile_s, "one-regular|all-regular");
  sc_weak->add_option("--budget", budget, "max frames examined (0: unlimited)")
      ->envname("FLATFRAME_BUDGET");
  add_json(sc_weak);

  auto* sc_txtable = app.add_subcommand("txtable", "Rank-2 invariant and degree-bound table");
  sc_txtable->add_option("--rank", rank, "table rank (only 2 is defined)");
  add_json(sc_txtable);
  sc_txtable->add_flag("--csv", csv_out, "CSV output");

  auto* sc_split = app.add_subcommand("split", "Split a product frame into factor blocks");
  sc_split->add_option("--matrix", matrix_path, "JSON file: {matrix} or {space, frame}")
      ->required();
  sc_split->add_option("--n1", n1, "leading block size for raw matrix input");
  add_json(sc_split);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help and friends
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  try {
    if (app.got_subcommand(sc_catalog)) return run_catalog(json_out, csv_out);
    if (app.got_subcommand(sc_dims)) return run_dims(space, json_out);
    if (app.got_subcommand(sc_qdim)) return run_qdim(space, vec_s, json_out);
    if (app.got_subcommand(sc_frames))
      return run_frames(space, up_to_weyl, budget, limit, pick, json_out);
    if (app.got_subcommand(sc_match)) return run_match(matrix_path, mode_s, json_out);
    if (app.got_subcommand(sc_certify))
      return run_certify(space, exhaustive, budget, workers, up_to_weyl, json_out);
    if (app.got_subcommand(sc_weak)) return run_weak(space, profile_s, budget, json_out);
    if (app.got_subcommand(sc_txtable)) return run_txtable(rank, csv_out, json_out);
    if (app.got_subcommand(sc_split)) return run_split(matrix_path, n1, json_out);
    std::cerr << "error: no subcommand\n";
    return 3;
  } catch (const ff::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return (e.code() == ff::Errc::BudgetExceeded || e.code() == ff::Errc::OrbitBudgetExceeded)
               ? 2
               : 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
