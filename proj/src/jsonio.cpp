// JSON and CSV serialization.

#include "flatframe/jsonio.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "flatframe/root_system.hpp"

namespace flatframe::jsonio {

std::string dump(const json& j) { return j.dump(2) + "\n"; }

json parse_text(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(Errc::InputError, "malformed JSON");
  return j;
}

json parse_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(Errc::InputError, "cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

json vec_json(const Vec& v) {
  json a = json::array();
  for (Int x : v) a.push_back(x);
  return a;
}

Vec vec_from_json(const json& j) {
  if (!j.is_array()) fail(Errc::InputError, "vector must be a JSON array");
  Vec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) fail(Errc::InputError, "vector entries must be integers");
    v.push_back(x.get<Int>());
  }
  return v;
}

json descriptor_json(const catalog::DescPtr& d) {
  json j = json::object();
  j["id"] = d->id;
  j["family"] = d->family;
  j["params"] = json::array();
  for (Int p : d->params) j["params"].push_back(p);
  j["rank"] = d->rank;
  j["dim_x"] = d->dim_x;
  j["min_qdim"] = d->recorded_min_qdim;
  json roots = json::array();
  for (const auto& r : d->roots.positives) {
    json jr = json::object();
    jr["coords"] = vec_json(r.coords);
    jr["mult"] = r.mult;
    roots.push_back(std::move(jr));
  }
  j["roots"] = std::move(roots);
  json si = json::array();
  for (int i : d->roots.simple_indices) si.push_back(i);
  j["simple_root_indices"] = std::move(si);
  json al = json::array();
  for (const auto& a : d->aliases) al.push_back(a);
  j["aliases"] = std::move(al);
  json fs = json::array();
  for (const auto& f : d->factors) fs.push_back(f->id);
  j["factors"] = std::move(fs);
  return j;
}

json ray_json(const singular::SingularRay& r) {
  json j = json::object();
  j["vector"] = vec_json(r.vector);
  j["simple_index"] = r.simple_index;
  j["q_dim"] = r.q_dim;
  return j;
}

json matrix_json(const incidence::IncidenceMatrix& a) {
  json j = json::object();
  j["space"] = a.space_id;
  json fr = json::array();
  for (const auto& v : a.frame) fr.push_back(vec_json(v));
  j["frame"] = std::move(fr);
  json rows = json::array();
  for (int i = 0; i < a.n_rows; ++i) {
    json row = json::array();
    for (int c = 0; c < a.n_cols; ++c) row.push_back(a.get(i, c) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  j["rows"] = std::move(rows);
  json dm = json::array();
  for (int d : a.demands) dm.push_back(d);
  j["demands"] = std::move(dm);
  return j;
}

incidence::IncidenceMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) fail(Errc::InputError, "matrix JSON must be an object");

  if (!j.contains("rows")) {
    // Rebuild from the catalog.
    if (!j.contains("space") || !j.contains("frame"))
      fail(Errc::InputError, "matrix JSON needs either rows or space+frame");
    auto d = catalog::lookup(j.at("space").get<std::string>());
    singular::Frame f;
    for (const auto& v : j.at("frame")) f.push_back(vec_from_json(v));
    int demand = 3;
    if (j.contains("demands")) {
      const auto& dm = j.at("demands");
      if (!dm.is_array() || dm.empty())
        fail(Errc::InputError, "demands must be a nonempty array");
      demand = dm.front().get<int>();
      for (const auto& x : dm)
        if (x.get<int>() != demand)
          fail(Errc::InputError, "rebuilt matrices support only uniform demands");
    }
    return incidence::incidence_matrix(d, f, demand);
  }

  const auto& rows = j.at("rows");
  if (!rows.is_array() || rows.empty())
    fail(Errc::InputError, "rows must be a nonempty array");
  incidence::IncidenceMatrix a;
  if (j.contains("space")) a.space_id = j.at("space").get<std::string>();
  if (j.contains("frame"))
    for (const auto& v : j.at("frame")) a.frame.push_back(vec_from_json(v));
  a.n_rows = static_cast<int>(rows.size());
  a.n_cols = -1;
  for (const auto& row : rows) {
    if (!row.is_array()) fail(Errc::InputError, "each row must be an array");
    if (a.n_cols < 0) a.n_cols = static_cast<int>(row.size());
    if (static_cast<int>(row.size()) != a.n_cols)
      fail(Errc::InputError, "rows must all have the same length");
    if (a.n_cols == 0) fail(Errc::InputError, "rows must be nonempty");
    incidence::BitRow bits((a.n_cols + 63) / 64, 0);
    for (int c = 0; c < a.n_cols; ++c) {
      int bit = row.at(c).get<int>();
      if (bit != 0 && bit != 1) fail(Errc::InputError, "matrix entries must be 0 or 1");
      if (bit) incidence::set_bit(bits, c);
    }
    a.rows.push_back(std::move(bits));
  }
  if (j.contains("demands")) {
    for (const auto& x : j.at("demands")) {
      int d = x.get<int>();
      if (d < 1) fail(Errc::InputError, "demands must be positive");
      a.demands.push_back(d);
    }
    if (static_cast<int>(a.demands.size()) != a.n_rows)
      fail(Errc::InputError, "demands length must match the row count");
  } else {
    a.demands.assign(a.n_rows, 3);
  }
  for (int c = 0; c < a.n_cols; ++c) a.columns.push_back({-1, c});
  return a;
}

json match_json(const matcher::MatchResult& r) {
  json j = json::object();
  j["status"] = r.status;
  json asg = json::array();
  for (const auto& cols : r.assignment) {
    json row = json::array();
    for (int c : cols) row.push_back(c);
    asg.push_back(std::move(row));
  }
  j["assignment"] = std::move(asg);
  json tr = json::array();
  for (const auto& t : r.trace) {
    json jt = json::object();
    jt["stage"] = t.stage;
    jt["row"] = t.row;
    json cols = json::array();
    for (int c : t.cols) cols.push_back(c);
    jt["cols"] = std::move(cols);
    json rem = json::array();
    for (int p : t.remaining_popcounts) rem.push_back(p);
    jt["remaining_popcounts"] = std::move(rem);
    tr.push_back(std::move(jt));
  }
  j["trace"] = std::move(tr);
  if (r.failure) {
    json jf = json::object();
    jf["stage"] = r.failure->stage;
    jf["row"] = r.failure->row;
    jf["remaining"] = r.failure->remaining;
    j["failure"] = std::move(jf);
  } else {
    j["failure"] = nullptr;
  }
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  j["notes"] = std::move(notes);
  return j;
}

json certificate_json(const oracle::InfeasibilityCertificate& c) {
  json j = json::object();
  json rs = json::array();
  for (int r : c.row_subset) rs.push_back(r);
  j["row_subset"] = std::move(rs);
  json nb = json::array();
  for (int col : c.neighborhood) nb.push_back(col);
  j["neighborhood"] = std::move(nb);
  j["neighborhood_size"] = static_cast<Int>(c.neighborhood.size());
  j["demand_sum"] = c.demand_sum;
  return j;
}

json certification_json(const oracle::CertificationReport& r) {
  json j = json::object();
  j["space"] = r.space_id;
  j["status"] = r.status;
  j["method"] = r.method;
  j["frames_examined"] = r.frames_examined;
  j["up_to_weyl"] = r.up_to_weyl;
  json g = json::object();
  g["feasible_frames"] = r.greedy.feasible_frames;
  g["repair_matched"] = r.greedy.repair_matched;
  g["augmenting_matched"] = r.greedy.augmenting_matched;
  g["fraction"] = r.greedy.fraction();
  j["greedy"] = std::move(g);
  if (r.counterexample) {
    json ce = json::object();
    json fr = json::array();
    for (const auto& v : r.counterexample->frame) fr.push_back(vec_json(v));
    ce["frame"] = std::move(fr);
    json li = json::array();
    for (int i : r.counterexample->line_indices) li.push_back(i);
    ce["line_indices"] = std::move(li);
    ce["certificate"] = certificate_json(r.counterexample->certificate);
    j["counterexample"] = std::move(ce);
  } else {
    j["counterexample"] = nullptr;
  }
  json fs = json::array();
  for (const auto& f : r.factors) fs.push_back(certification_json(f));
  j["factors"] = std::move(fs);
  json notes = json::array();
  for (const auto& n : r.notes) notes.push_back(n);
  j["notes"] = std::move(notes);
  return j;
}

json split_json(const incidence::SplitAssignment& s) {
  json j = json::object();
  json rf = json::array();
  for (int r : s.rows_first) rf.push_back(r);
  j["rows_first"] = std::move(rf);
  json rs = json::array();
  for (int r : s.rows_second) rs.push_back(r);
  j["rows_second"] = std::move(rs);
  j["minor_first"] = s.minor_first.str();
  j["minor_second"] = s.minor_second.str();
  return j;
}

namespace {

// Catalog entries sorted by (family, params) for table emission.
std::vector<catalog::DescPtr> sorted_entries() {
  auto entries = catalog::all_entries();
  std::sort(entries.begin(), entries.end(),
            [](const catalog::DescPtr& a, const catalog::DescPtr& b) {
              if (a->family != b->family) return a->family < b->family;
              return a->params < b->params;
            });
  return entries;
}

std::string params_str(const catalog::DescPtr& d) {
  std::string s;
  for (size_t i = 0; i < d->params.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(d->params[i]);
  }
  return s;
}

}  // namespace

json txtable_json() {
  json rows = json::array();
  for (const auto& d : sorted_entries()) {
    if (d->rank != 2) continue;
    auto db = singular::degree_bound(d);
    json r = json::object();
    r["space"] = d->id;
    r["family"] = d->family;
    r["dim_x"] = d->dim_x;
    r["min_qdim"] = d->recorded_min_qdim;
    r["t_x"] = singular::t_invariant(d);
    r["degree_bound"] = db.bound;
    r["exceptional"] = db.exceptional;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string txtable_csv() {
  std::string out = "space,family,dim_x,min_qdim,t_x,degree_bound,exceptional\n";
  for (const auto& d : sorted_entries()) {
    if (d->rank != 2) continue;
    auto db = singular::degree_bound(d);
    out += d->id + "," + d->family + "," + std::to_string(d->dim_x) + "," +
           std::to_string(d->recorded_min_qdim) + "," +
           std::to_string(singular::t_invariant(d)) + "," + std::to_string(db.bound) +
           "," + (db.exceptional ? "true" : "false") + "\n";
  }
  return out;
}

json catalog_json() {
  json rows = json::array();
  for (const auto& d : sorted_entries()) {
    json r = json::object();
    r["id"] = d->id;
    r["family"] = d->family;
    json ps = json::array();
    for (Int p : d->params) ps.push_back(p);
    r["params"] = std::move(ps);
    r["rank"] = d->rank;
    r["dim_x"] = d->dim_x;
    r["m"] = d->dim_x - d->rank;
    r["min_qdim"] = d->recorded_min_qdim;
    rows.push_back(std::move(r));
  }
  return rows;
}

std::string catalog_csv() {
  std::string out = "id,family,params,rank,dim_x,m,min_qdim\n";
  for (const auto& d : sorted_entries()) {
    out += d->id + "," + d->family + "," + params_str(d) + "," +
           std::to_string(d->rank) + "," + std::to_string(d->dim_x) + "," +
           std::to_string(d->dim_x - d->rank) + "," +
           std::to_string(d->recorded_min_qdim) + "\n";
  }
  return out;
}

}  // namespace flatframe::jsonio
