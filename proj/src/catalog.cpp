#include "flatframe/catalog.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <sstream>

namespace flatframe::catalog {

namespace {

// ---------------------------------------------------------------- parsing

struct ParsedSimple {
  std::string name;        // SL, SU, SO, SO*, Sp, G2, F4, E6, E7, E8, H
  std::vector<Int> nums;   // numeric args in order
  char field = 0;          // 'R', 'C' or 'H' when present
};

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// split a product id on '×' (UTF-8) or 'x' at paren depth zero
std::vector<std::string> split_product(const std::string& raw) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (size_t i = 0; i < raw.size(); ++i) {
    unsigned char c = raw[i];
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (depth == 0 && c == 0xC3 && i + 1 < raw.size() &&
        static_cast<unsigned char>(raw[i + 1]) == 0x97) {
      parts.push_back(cur);
      cur.clear();
      ++i;
      continue;
    }
    if (depth == 0 && c == 'x') {
      parts.push_back(cur);
      cur.clear();
      continue;
    }
    cur += static_cast<char>(c);
  }
  parts.push_back(cur);
  return parts;
}

ParsedSimple parse_simple(const std::string& tok) {
  if (tok.empty()) fail(Errc::UnknownSpace, "empty space id");
  ParsedSimple p;

  // H^n
  if (tok[0] == 'H' && tok.size() > 1 && (tok[1] == '^' || tok[1] == '(')) {
    p.name = "H";
    std::string num = tok[1] == '^' ? tok.substr(2)
                                    : (tok.back() == ')' ? tok.substr(2, tok.size() - 3)
                                                         : std::string());
    if (num.empty() || num.find_first_not_of("0123456789") != std::string::npos)
      fail(Errc::UnknownSpace, "cannot parse '" + tok + "'");
    p.nums.push_back(std::stoll(num));
    return p;
  }

  size_t open = tok.find('(');
  if (open == std::string::npos || tok.back() != ')')
    fail(Errc::UnknownSpace, "cannot parse '" + tok + "'");
  p.name = tok.substr(0, open);
  static const std::vector<std::string> known = {"SL", "SU", "SO", "SO*", "Sp",
                                                 "G2", "F4", "E6", "E7", "E8"};
  if (std::find(known.begin(), known.end(), p.name) == known.end())
    fail(Errc::UnknownSpace, "unknown family '" + p.name + "'");

  std::string args = tok.substr(open + 1, tok.size() - open - 2);
  std::string cur;
  std::vector<std::string> parts;
  for (char c : args) {
    if (c == ',') {
      parts.push_back(cur);
      cur.clear();
    } else
      cur += c;
  }
  parts.push_back(cur);
  for (const std::string& a : parts) {
    if (a == "R" || a == "C" || a == "H") {
      if (p.field) fail(Errc::UnknownSpace, "two field letters in '" + tok + "'");
      p.field = a[0];
    } else if (!a.empty() &&
               a.find_first_not_of("0123456789-") == std::string::npos &&
               a.find('-', 1) == std::string::npos && a != "-") {
      p.nums.push_back(std::stoll(a));
    } else {
      fail(Errc::UnknownSpace, "bad argument '" + a + "' in '" + tok + "'");
    }
  }
  return p;
}

std::string canonical_string(const ParsedSimple& p) {
  if (p.name == "H") return "H^" + std::to_string(p.nums.at(0));
  std::string s = p.name + "(";
  for (size_t i = 0; i < p.nums.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(p.nums[i]);
  }
  if (p.field) {
    if (!p.nums.empty()) s += ',';
    s += p.field;
  }
  return s + ")";
}

// ------------------------------------------------------- alias resolution

const std::vector<std::pair<std::string, std::string>>& alias_table() {
  static const std::vector<std::pair<std::string, std::string>> t = {
      {"SU(1,1)", "SL(2,R)"},
      {"SU(2,2)", "SO(4,2)"},
      {"SO(2,1)", "SL(2,R)"},
      {"SO(3,1)", "SL(2,C)"},
      {"SO(5,1)", "SL(2,H)"},
      {"SO(2,2)", "SL(2,R)×SL(2,R)"},
      {"SO(3,2)", "Sp(4,R)"},
      {"SO(3,3)", "SL(4,R)"},
      {"Sp(2,R)", "SL(2,R)"},
      {"Sp(2,C)", "SL(2,C)"},
      {"Sp(1,1)", "SO(4,1)"},
      {"SO(3,C)", "SL(2,C)"},
      {"SO(4,C)", "SL(2,C)×SL(2,C)"},
      {"SO(5,C)", "Sp(4,C)"},
      {"SO(6,C)", "SL(4,C)"},
      {"SO*(6)", "SU(3,1)"},
      {"SO*(8)", "SO(6,2)"},
      {"H^2", "SL(2,R)"},
      {"H^3", "SL(2,C)"},
      {"H^5", "SL(2,H)"},
  };
  return t;
}

// canonical target for an id, or empty if already canonical
std::string alias_target(const std::string& id) {
  for (const auto& [from, to] : alias_table())
    if (from == id) return to;
  if (id.size() > 2 && id[0] == 'H' && id[1] == '^') {
    long long n = std::stoll(id.substr(2));
    if (n >= 2) return "SO(" + std::to_string(n) + ",1)";
  }
  return {};
}

std::vector<std::string> aliases_of(const std::string& canonical) {
  std::vector<std::string> out;
  for (const auto& [from, to] : alias_table())
    if (to == canonical) out.push_back(from);
  // H^n names the corresponding rank-one hyperbolic entry
  if (canonical.rfind("SO(", 0) == 0 && canonical.size() > 5 &&
      canonical.substr(canonical.size() - 3) == ",1)") {
    std::string m = canonical.substr(3, canonical.size() - 6);
    if (m.find_first_not_of("0123456789") == std::string::npos)
      out.push_back("H^" + m);
  }
  return out;
}

// --------------------------------------------------------- family builders

struct BuildSpec {
  std::string family;
  std::vector<Int> params;
  TypeSpec type;
  std::map<RootTag, int> mult;
  Int recorded = 0;
};

[[noreturn]] void bad_params(const std::string& id, const std::string& why) {
  fail(Errc::UnsupportedParams, id + ": " + why);
}

constexpr Int kMaxRank = 12;

BuildSpec make_spec(const ParsedSimple& p, const std::string& id) {
  BuildSpec b;
  auto need = [&](bool ok, const char* why) {
    if (!ok) bad_params(id, why);
  };

  if (p.name == "SL") {
    need(p.nums.size() == 1 && p.field != 0, "expected SL(k,R|C|H)");
    Int k = p.nums[0];
    need(k >= 2, "SL(k,F) needs k >= 2");
    need(k - 1 <= kMaxRank, "rank above supported bound");
    b.type = {Kind::A, int(k - 1)};
    b.params = {k};
    if (p.field == 'R') {
      b.family = "SLR";
      b.mult = {{RootTag::Middle, 1}};
      b.recorded = k - 1;
    } else if (p.field == 'C') {
      b.family = "SLC";
      b.mult = {{RootTag::Middle, 2}};
      b.recorded = 2 * (k - 1);
    } else {
      b.family = "SLH";
      b.mult = {{RootTag::Middle, 4}};
      b.recorded = 4 * (k - 1);
    }
    return b;
  }

  if (p.name == "SU" || p.name == "Sp" || p.name == "SO") {
    const bool pair_form = p.nums.size() == 2 && p.field == 0;
    if (p.name == "Sp" && !pair_form) {
      need(p.nums.size() == 1 && (p.field == 'R' || p.field == 'C'),
           "expected Sp(2n,R|C) or Sp(m,n)");
      Int k = p.nums[0];
      need(k >= 2 && k % 2 == 0, "Sp(k,F) needs even k >= 2");
      Int n = k / 2;
      need(n <= kMaxRank, "rank above supported bound");
      b.type = {Kind::C, int(n)};
      b.params = {k};
      if (p.field == 'R') {
        b.family = "SpR";
        b.mult = {{RootTag::Middle, 1}, {RootTag::Long, 1}};
        b.recorded = 2 * n - 1;
      } else {
        b.family = "SpC";
        b.mult = {{RootTag::Middle, 2}, {RootTag::Long, 2}};
        b.recorded = 4 * n - 2;
      }
      return b;
    }
    if (p.name == "SO" && !pair_form) {
      need(p.nums.size() == 1 && p.field == 'C', "expected SO(m,n) or SO(k,C)");
      Int k = p.nums[0];
      need(k >= 3, "SO(k,C) needs k >= 3");
      b.family = "SOC";
      b.params = {k};
      if (k % 2) {
        Int n = (k - 1) / 2;
        need(n <= kMaxRank, "rank above supported bound");
        b.type = {Kind::B, int(n)};
        b.mult = {{RootTag::Middle, 2}, {RootTag::Short, 2}};
        b.recorded = 4 * n - 2;
      } else {
        Int n = k / 2;
        need(n <= kMaxRank, "rank above supported bound");
        b.type = {Kind::D, int(n)};
        b.mult = {{RootTag::Middle, 2}};
        b.recorded = 4 * n - 4;
      }
      return b;
    }
    need(pair_form, "expected two integer parameters");
    Int m = p.nums[0], n = p.nums[1];
    need(n >= 1, "second parameter must be >= 1");
    need(m >= n, "parameters must satisfy m >= n");
    need(n <= kMaxRank, "rank above supported bound");
    need(m <= 24, "first parameter above supported bound");
    b.params = {m, n};
    if (p.name == "SU") {
      b.family = "SU";
      if (m > n) {
        b.type = {Kind::BC, int(n)};
        b.mult = {{RootTag::Middle, 2},
                  {RootTag::Short, int(2 * (m - n))},
                  {RootTag::Doubled, 1}};
        b.recorded = 2 * (m + n) - 3;
      } else {
        b.type = {Kind::C, int(n)};
        b.mult = {{RootTag::Middle, 2}, {RootTag::Long, 1}};
        b.recorded = 4 * n - 3;
      }
      return b;
    }
    if (p.name == "Sp") {
      b.family = "SpH";
      if (m > n) {
        b.type = {Kind::BC, int(n)};
        b.mult = {{RootTag::Middle, 4},
                  {RootTag::Short, int(4 * (m - n))},
                  {RootTag::Doubled, 3}};
        b.recorded = 4 * (m + n) - 5;
      } else {
        b.type = {Kind::C, int(n)};
        b.mult = {{RootTag::Middle, 4}, {RootTag::Long, 3}};
        b.recorded = n == 2 ? 10 : 8 * n - 5;
      }
      return b;
    }
    // SO(m,n)
    b.family = "SO";
    need(!(m == 1 && n == 1), "SO(1,1) is not of noncompact type");
    if (n == 1) {
      need(m >= 2, "SO(m,1) needs m >= 2");
      b.type = {Kind::B, 1};
      b.mult = {{RootTag::Middle, int(m - 1)}};
    } else if (m > n) {
      b.type = {Kind::B, int(n)};
      b.mult = {{RootTag::Middle, 1}, {RootTag::Short, int(m - n)}};
    } else {
      b.type = {Kind::D, int(n)};
      b.mult = {{RootTag::Middle, 1}};
    }
    b.recorded = m + n - 2;
    return b;
  }

  if (p.name == "SO*") {
    need(p.nums.size() == 1 && p.field == 0, "expected SO*(2n)");
    Int k = p.nums[0];
    need(k >= 4 && k % 2 == 0, "SO*(k) needs even k >= 4");
    need(k != 4, "SO*(4) has a compact factor and is not of noncompact type");
    need(k <= 26, "parameter above supported bound");
    Int n = k / 2;
    b.family = "SOstar";
    b.params = {k};
    if (n % 2 == 0) {
      Int kk = n / 2;
      b.type = {Kind::C, int(kk)};
      b.mult = {{RootTag::Middle, 4}, {RootTag::Long, 1}};
      // The minimum moves to the all-ones ray (value 2k^2-k, stabilizer
      // sp(k)) when k = 3; from k = 4 on the first ray's 8k-7 is smaller.
      b.recorded = std::min(8 * kk - 7, 2 * kk * kk - kk);
    } else {
      Int kk = (n - 1) / 2;
      b.type = {Kind::BC, int(kk)};
      b.mult = {{RootTag::Middle, 4}, {RootTag::Short, 4}, {RootTag::Doubled, 1}};
      b.recorded = 8 * kk - 3;
    }
    return b;
  }

  // exceptional families: one discrete label argument or a field letter C
  auto label = [&]() -> Int {
    if (p.field == 'C' && p.nums.empty()) return INT64_MIN;  // marker for complex
    if (p.nums.size() == 1 && p.field == 0) return p.nums[0];
    bad_params(id, "expected one real-form label or C");
  };
  Int lab = label();
  const bool cplx = lab == INT64_MIN;
  b.family = p.name;
  b.params = cplx ? std::vector<Int>{} : std::vector<Int>{lab};

  if (p.name == "G2") {
    if (cplx) {
      b.type = {Kind::G2};
      b.mult = {{RootTag::Short, 2}, {RootTag::Long, 2}};
      b.recorded = 10;
      return b;
    }
    need(lab == 2, "unknown real form of G2");
    b.type = {Kind::G2};
    b.mult = {{RootTag::Short, 1}, {RootTag::Long, 1}};
    b.recorded = 5;
    return b;
  }
  if (p.name == "F4") {
    if (cplx) {
      b.type = {Kind::F4};
      b.mult = {{RootTag::Short, 2}, {RootTag::Long, 2}};
      b.recorded = 30;
      return b;
    }
    if (lab == 4) {
      b.type = {Kind::F4};
      b.mult = {{RootTag::Short, 1}, {RootTag::Long, 1}};
      b.recorded = 15;
      return b;
    }
    if (lab == -20) {
      b.type = {Kind::BC, 1};
      b.mult = {{RootTag::Short, 8}, {RootTag::Doubled, 7}};
      b.recorded = 15;
      return b;
    }
    bad_params(id, "unknown real form of F4");
  }
  if (p.name == "E6") {
    if (cplx) {
      b.type = {Kind::E6};
      b.mult = {{RootTag::Middle, 2}};
      b.recorded = 32;
      return b;
    }
    if (lab == 6) {
      b.type = {Kind::E6};
      b.mult = {{RootTag::Middle, 1}};
      b.recorded = 16;
      return b;
    }
    if (lab == 2) {
      b.type = {Kind::F4};
      b.mult = {{RootTag::Long, 1}, {RootTag::Short, 2}};
      b.recorded = 21;
      return b;
    }
    if (lab == -14) {
      b.type = {Kind::BC, 2};
      b.mult = {{RootTag::Middle, 6}, {RootTag::Short, 8}, {RootTag::Doubled, 1}};
      b.recorded = 21;
      return b;
    }
    if (lab == -26) {
      b.type = {Kind::A, 2};
      b.mult = {{RootTag::Middle, 8}};
      b.recorded = 16;
      return b;
    }
    bad_params(id, "unknown real form of E6");
  }
  if (p.name == "E7") {
    if (cplx) {
      b.type = {Kind::E7};
      b.mult = {{RootTag::Middle, 2}};
      b.recorded = 54;
      return b;
    }
    if (lab == 7) {
      b.type = {Kind::E7};
      b.mult = {{RootTag::Middle, 1}};
      b.recorded = 27;
      return b;
    }
    if (lab == -5) {
      b.type = {Kind::F4};
      b.mult = {{RootTag::Long, 1}, {RootTag::Short, 4}};
      b.recorded = 33;
      return b;
    }
    if (lab == -25) {
      b.type = {Kind::C, 3};
      b.mult = {{RootTag::Middle, 8}, {RootTag::Long, 1}};
      b.recorded = 27;
      return b;
    }
    bad_params(id, "unknown real form of E7");
  }
  if (p.name == "E8") {
    if (cplx) {
      b.type = {Kind::E8};
      b.mult = {{RootTag::Middle, 2}};
      b.recorded = 114;
      return b;
    }
    if (lab == 8) {
      b.type = {Kind::E8};
      b.mult = {{RootTag::Middle, 1}};
      b.recorded = 57;
      return b;
    }
    if (lab == -24) {
      b.type = {Kind::F4};
      b.mult = {{RootTag::Long, 1}, {RootTag::Short, 8}};
      b.recorded = 57;
      return b;
    }
    bad_params(id, "unknown real form of E8");
  }
  fail(Errc::UnknownSpace, "unknown family '" + p.name + "'");
}

Int min_qdim(const RestrictedRootSystem& s) {
  Int best = -1;
  for (const Vec& ray : chamber_rays(s)) {
    Int q = 0;
    for (const auto& r : s.positives)
      if (dot128(r.coords, ray) != 0) q += r.mult;
    if (best < 0 || q < best) best = q;
  }
  return best;
}

DescPtr build_simple(const ParsedSimple& p, const std::string& id) {
  BuildSpec b = make_spec(p, id);
  auto d = std::make_shared<SpaceDescriptor>();
  d->id = id;
  d->family = b.family;
  d->params = b.params;
  d->roots = build_system(b.type, b.mult);
  d->rank = d->roots.rank;
  d->dim_x = d->rank + d->roots.sum_mult();
  d->recorded_min_qdim = b.recorded;
  d->aliases = aliases_of(id);
  Int computed = min_qdim(d->roots);
  if (computed != d->recorded_min_qdim)
    fail(Errc::InconsistentCatalog,
         id + ": recorded minimal singular dimension " +
             std::to_string(d->recorded_min_qdim) + " but root data gives " +
             std::to_string(computed));
  return d;
}

std::mutex cache_mu;
std::map<std::string, DescPtr>& cache() {
  static std::map<std::string, DescPtr> c;
  return c;
}

}  // namespace

DescPtr lookup(const std::string& id) {
  std::string raw = strip_spaces(id);
  if (raw.empty()) fail(Errc::UnknownSpace, "empty space id");

  std::vector<std::string> parts = split_product(raw);
  // canonicalize each factor, resolving aliases (which may be products)
  std::vector<std::string> canon;
  for (const std::string& part : parts) {
    if (part.empty()) fail(Errc::UnknownSpace, "empty factor in '" + id + "'");
    ParsedSimple p = parse_simple(part);
    std::string c = canonical_string(p);
    std::string target = alias_target(c);
    if (!target.empty()) {
      for (const std::string& sub : split_product(target)) canon.push_back(sub);
    } else {
      canon.push_back(c);
    }
  }

  std::string full;
  for (size_t i = 0; i < canon.size(); ++i) {
    if (i) full += "\xC3\x97";  // ×
    full += canon[i];
  }

  {
    std::lock_guard<std::mutex> lk(cache_mu);
    auto it = cache().find(full);
    if (it != cache().end()) return it->second;
  }

  DescPtr result;
  if (canon.size() == 1) {
    result = build_simple(parse_simple(canon[0]), canon[0]);
  } else {
    std::vector<DescPtr> factors;
    int total_rank = 0;
    for (const std::string& c : canon) {
      DescPtr f = lookup(c);
      total_rank += f->rank;
      factors.push_back(f);
    }
    if (total_rank > kMaxRank)
      fail(Errc::UnsupportedParams, full + ": product rank above supported bound");
    auto d = std::make_shared<SpaceDescriptor>();
    d->id = full;
    d->family = "product";
    d->rank = total_rank;
    d->roots = factors[0]->roots;
    for (size_t i = 1; i < factors.size(); ++i)
      d->roots = combine_systems(d->roots, factors[i]->roots);
    d->dim_x = 0;
    d->recorded_min_qdim = -1;
    for (const DescPtr& f : factors) {
      d->dim_x += f->dim_x;
      if (d->recorded_min_qdim < 0 || f->recorded_min_qdim < d->recorded_min_qdim)
        d->recorded_min_qdim = f->recorded_min_qdim;
    }
    if (full == "SL(2,R)\xC3\x97SL(2,R)") d->aliases = {"SO(2,2)"};
    d->factors = std::move(factors);
    result = d;
  }

  std::lock_guard<std::mutex> lk(cache_mu);
  cache().emplace(full, result);
  return result;
}

std::vector<DescPtr> all_entries() {
  static const std::vector<std::string> ids = [] {
    std::vector<std::string> v;
    for (int k = 2; k <= 9; ++k) v.push_back("SL(" + std::to_string(k) + ",R)");
    for (int k = 2; k <= 7; ++k) v.push_back("SL(" + std::to_string(k) + ",C)");
    for (int k = 2; k <= 5; ++k) v.push_back("SL(" + std::to_string(k) + ",H)");
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {4, 1}, {5, 1}, {3, 2}, {4, 2},
                        {5, 2}, {3, 3}, {4, 3}, {4, 4}})
      v.push_back("SU(" + std::to_string(m) + "," + std::to_string(n) + ")");
    for (auto [m, n] :
         {std::pair{4, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}, {4, 2}, {5, 2}, {6, 2},
          {7, 2}, {8, 2}, {4, 3}, {5, 3}, {6, 3}, {7, 3}, {4, 4}, {5, 4}, {6, 4},
          {5, 5}, {6, 5}, {6, 6}})
      v.push_back("SO(" + std::to_string(m) + "," + std::to_string(n) + ")");
    for (int k : {4, 6, 8, 10, 12}) v.push_back("Sp(" + std::to_string(k) + ",R)");
    for (auto [m, n] : {std::pair{2, 1}, {3, 1}, {4, 1}, {2, 2}, {3, 2}, {3, 3}})
      v.push_back("Sp(" + std::to_string(m) + "," + std::to_string(n) + ")");
    for (int k : {10, 12, 14, 16}) v.push_back("SO*(" + std::to_string(k) + ")");
    for (int k : {4, 6, 8, 10}) v.push_back("Sp(" + std::to_string(k) + ",C)");
    for (int k : {7, 9, 11, 13, 8, 10, 12}) v.push_back("SO(" + std::to_string(k) + ",C)");
    for (std::string e : {"G2(2)", "F4(4)", "F4(-20)", "E6(6)", "E6(2)", "E6(-14)",
                          "E6(-26)", "E7(7)", "E7(-5)", "E7(-25)", "E8(8)", "E8(-24)",
                          "G2(C)", "F4(C)", "E6(C)", "E7(C)", "E8(C)"})
      v.push_back(e);
    return v;
  }();
  std::vector<DescPtr> out;
  out.reserve(ids.size());
  for (const std::string& id : ids) out.push_back(lookup(id));
  return out;
}

const std::vector<RestrictedRoot>& positive_roots(const DescPtr& d) {
  return d->roots.positives;
}

std::map<RootTag, std::pair<int, int>> multiplicity_table(const DescPtr& d) {
  std::map<RootTag, std::pair<int, int>> out;
  for (const auto& r : d->roots.positives) {
    auto& [count, mult] = out[r.tag];
    if (count) check(mult == r.mult, "mixed multiplicities within one tag");
    ++count;
    mult = r.mult;
  }
  return out;
}

std::vector<RatVec> weyl_orbit(const DescPtr& d, const RatVec& v, size_t budget) {
  if (v.num.size() != size_t(d->roots.ambient))
    fail(Errc::InputError, "vector dimension " + std::to_string(v.num.size()) +
                               " does not match ambient dimension " +
                               std::to_string(d->roots.ambient));
  bool zero = true;
  for (const auto& x : v.num)
    if (x != 0) zero = false;
  if (zero) fail(Errc::ZeroVector, "orbit of the zero vector");
  return vector_orbit(d->roots, v, budget);
}

}  // namespace flatframe::catalog
