#pragma once
// Group-spec dispatch, the Beauville decision pipeline, and machine-readable
// reports. A GroupSpec (JSON) names a family and its parameters; the pipeline
// realizes the group, tries non-existence certificates first, then the
// exhaustive signature sweep when the order is within the threshold, then
// family-suggested witness structures, then seeded random search. Provenance
// notes record which stage produced the verdict, so a "no" never comes from a
// randomized miss.

#include <filesystem>
#include <fstream>

#include "json.hpp"

#include "constructions.hpp"
#include "criteria.hpp"
#include "formulas.hpp"
#include "lie.hpp"
#include "nottingham.hpp"
#include "pc.hpp"

namespace beauville {

using json = nlohmann::ordered_json;

struct ToolConfig {
  u64 element_budget = 8'000'000;
  u64 exhaustive_threshold = 20'000;
  u64 search_budget = 100'000;
  u64 semi_threshold = 10'000;
  u64 seed = 1;
};

struct GroupInput {
  std::string family;
  json params;
  std::shared_ptr<const GroupOracle> oracle;
  std::vector<Code> gens;
  // candidate Beauville structures, computed against the realized group
  std::function<std::vector<std::array<Code, 4>>(const Group&)> suggestions;
};

namespace specdetail {

inline u64 get_u64(const json& j, const std::string& key, i64 lo, i64 hi) {
  if (!j.contains(key) || !j[key].is_number_integer())
    fail<InputError>("group spec: missing integer field '" + key + "'");
  i64 v = j[key].get<i64>();
  if (v < lo || v > hi)
    fail<InputError>("group spec: field '" + key + "' out of range");
  return u64(v);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail<InputError>("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace specdetail

// Builds the oracle, generators and witness suggestions for one family.
inline GroupInput build_group_input(const json& spec, const ToolConfig& cfg) {
  using specdetail::get_u64;
  if (!spec.is_object() || !spec.contains("family") ||
      !spec["family"].is_string())
    fail<InputError>("group spec: expected an object with a 'family' string");
  GroupInput in;
  in.family = spec["family"].get<std::string>();
  in.params = spec;

  if (in.family == "abelian") {
    u64 n = get_u64(spec, "n", 1, 1 << 20);
    auto o = std::make_shared<AbelianOracle>(n);
    in.oracle = o;
    in.gens = {o->gen_e1(), o->gen_e2()};
    if (n == 1) in.gens.clear();
  } else if (in.family == "nottingham") {
    int p = int(get_u64(spec, "p", 3, 251));
    int k = int(get_u64(spec, "k", 2, 1 << 20));
    NottQuotient q = make_quotient(QuotientSpec::full_q(p, k));
    in.oracle = q.oracle;
    in.gens = {q.u, q.v};
    u64 budget = cfg.element_budget;
    in.suggestions = [q, budget](const Group& g) {
      return suggested_structures(q, g, budget);
    };
  } else if (in.family == "nottingham-diamond") {
    int p = int(get_u64(spec, "p", 3, 251));
    int m = int(get_u64(spec, "m", 0, 12));
    int alpha = 0;
    if (spec.contains("alpha") && spec["alpha"].is_string()) {
      if (spec["alpha"].get<std::string>() != "inf")
        fail<InputError>("group spec: alpha must be an integer or \"inf\"");
      alpha = -1;
    } else {
      alpha = int(get_u64(spec, "alpha", 0, 251));
    }
    NottQuotient q = make_quotient(QuotientSpec::diamond_q(p, m, alpha));
    in.oracle = q.oracle;
    in.gens = {q.u, q.v};
    u64 budget = cfg.element_budget;
    in.suggestions = [q, budget](const Group& g) {
      return suggested_structures(q, g, budget);
    };
  } else if (in.family == "pc") {
    std::string text;
    if (spec.contains("file"))
      text = specdetail::read_file(spec["file"].get<std::string>());
    else if (spec.contains("text"))
      text = spec["text"].get<std::string>();
    else if (spec.contains("builtin")) {
      std::string b = spec["builtin"].get<std::string>();
      int p = int(get_u64(spec, "p", 3, 251));
      if (b == "h34")
        text = builtin_h34_text(p, int(get_u64(spec, "r", 1, 250)));
      else if (b == "metacyclic-split")
        text = builtin_metacyclic_split_text(
            p, int(get_u64(spec, "e", 1, 12)),
            i64(get_u64(spec, "action", 2, 1 << 28)));
      else if (b == "metacyclic-modular")
        text = builtin_metacyclic_modular_text(p, int(get_u64(spec, "e", 2, 12)));
      else
        fail<InputError>("group spec: unknown pc builtin '" + b + "'");
    } else {
      fail<InputError>("group spec: pc needs 'file', 'text' or 'builtin'");
    }
    auto pg = std::make_shared<PcGroup>(parse_presentation(text));
    auto o = std::make_shared<PcOracle>(pg);
    in.oracle = o;
    for (u32 i = 0; i < pg->presentation().ngens(); ++i)
      in.gens.push_back(o->gen_code(i));
  } else if (in.family == "lie") {
    LieRingTable table;
    std::string builtin_name;
    if (spec.contains("file")) {
      table = parse_lie_file(specdetail::read_file(spec["file"].get<std::string>()));
    } else if (spec.contains("builtin")) {
      builtin_name = spec["builtin"].get<std::string>();
      table = builtin_lie(builtin_name, int(get_u64(spec, "p", 5, 251)));
    } else {
      fail<InputError>("group spec: lie needs 'file' or 'builtin'");
    }
    auto o = std::make_shared<LieOracle>(table);
    in.oracle = o;
    if (!builtin_name.empty()) {
      auto [a, b] = builtin_lie_generators(o->table(), builtin_name);
      in.gens = {o->pack(a), o->pack(b)};
    } else {
      for (size_t i = 0; i < o->table().dim() && i < 2; ++i)
        in.gens.push_back(o->basis_code(i));
    }
  } else if (in.family == "pk-quotient") {
    int p = int(get_u64(spec, "p", 5, 251));
    int k = int(get_u64(spec, "k", 1, 6));
    int s = int(get_u64(spec, "s", 1, 64));
    auto o = std::make_shared<PkQuotientOracle>(p, k, s);
    in.oracle = o;
    in.gens = {o->gen_t(), o->gen_a1()};
  } else if (in.family == "pk-nonsplit") {
    int p = int(get_u64(spec, "p", 5, 251));
    int k = int(get_u64(spec, "k", 1, 6));
    int e = int(get_u64(spec, "e", 2, 12));
    int m = int(get_u64(spec, "m", 2, 64));
    auto o = std::make_shared<NonsplitExtensionOracle>(p, k, e, m);
    in.oracle = o;
    in.gens = {o->gen_u(), o->gen_a1()};
  } else if (in.family == "potent-example") {
    int p = int(get_u64(spec, "p", 5, 61));
    auto o = std::make_shared<PotentExampleOracle>(p);
    in.oracle = o;
    in.gens = {o->gen_b(), o->gen_a(1), o->gen_a(size_t(p) - 1)};
  } else {
    fail<InputError>("group spec: unknown family '" + in.family + "'");
  }
  return in;
}

// Applies the per-spec overrides (exhaustive-threshold, element-budget,
// rng-seed, search-budget).
inline ToolConfig apply_overrides(const json& spec, ToolConfig cfg) {
  if (spec.contains("exhaustive-threshold"))
    cfg.exhaustive_threshold = spec["exhaustive-threshold"].get<u64>();
  if (spec.contains("element-budget"))
    cfg.element_budget = spec["element-budget"].get<u64>();
  if (spec.contains("rng-seed")) cfg.seed = spec["rng-seed"].get<u64>();
  if (spec.contains("search-budget"))
    cfg.search_budget = spec["search-budget"].get<u64>();
  return cfg;
}

// ---- decision pipeline ------------------------------------------------------

inline BeauvilleOutcome beauville_pipeline(const Group& G, const GroupInput& in,
                                           const ToolConfig& cfg,
                                           std::vector<std::string>& prov) {
  BeauvilleOutcome out;
  // 2-generator precheck: cyclic groups and p-groups of rank other than 2
  // are never Beauville
  bool rank_ok;
  if (G.is_p_group() && G.prime() != 0) {
    rank_ok = G.rank() == 2;
  } else if (G.order() == 1) {
    rank_ok = false;
  } else {
    bool cyclic = false;
    for (u32 g = 0; g < G.order() && !cyclic; ++g)
      if (G.element_order(g) == G.order()) cyclic = true;
    rank_ok = !cyclic;
  }
  if (!rank_ok) {
    out.verdict = BeauvilleOutcome::Verdict::no;
    out.method = "certificate";
    Certificate c;
    c.kind = Certificate::Kind::rank_obstruction;
    c.rank = G.rank();
    out.certificate = c;
    prov.push_back("not a 2-generator group (rank " +
                   std::to_string(G.rank()) + "): not a Beauville group");
    return out;
  }
  // certificates first
  if (G.is_p_group() && G.prime() != 0 && G.rank() == 2) {
    if (auto c = negative_certificate(G)) {
      if (!replay_certificate(G, *c))
        fail<IntegrityError>("negative certificate failed its replay");
      out.verdict = BeauvilleOutcome::Verdict::no;
      out.method = "certificate";
      out.certificate = c;
      prov.push_back(
          "certificate prop-negative: elements of order < p^e lie in two "
          "maximal subgroups and |G^{p^{e-1}}| = p");
      return out;
    }
    if (auto c = cyclic_obstruction(G)) {
      if (!replay_certificate(G, *c))
        fail<IntegrityError>("cyclic obstruction failed its replay");
      out.verdict = BeauvilleOutcome::Verdict::no;
      out.method = "certificate";
      out.certificate = c;
      prov.push_back(
          "certificate cyclic-obstruction: a central order-p subgroup meets "
          "every Sigma set");
      return out;
    }
    prov.push_back("certificates: none found");
  }
  // exhaustive sweep
  if (G.order() <= cfg.exhaustive_threshold) {
    SearchConfig sc;
    sc.exhaustive_threshold = cfg.exhaustive_threshold;
    sc.seed = cfg.seed;
    out = exhaustive_search(G, sc);
    prov.push_back("exhaustive signature sweep over all ordered pairs");
    return out;
  }
  prov.push_back("exhaustive sweep skipped: order " +
                 std::to_string(G.order()) + " over threshold " +
                 std::to_string(cfg.exhaustive_threshold));
  // family-suggested structures
  if (in.suggestions) {
    auto cands = in.suggestions(G);
    for (const auto& w : cands) {
      if (beauville_verify(G, w)) {
        out.verdict = BeauvilleOutcome::Verdict::yes;
        out.method = "verified-structure";
        out.witness = w;
        prov.push_back("family-suggested structure verified literally");
        return out;
      }
    }
    if (!cands.empty())
      prov.push_back("family-suggested structures: none verified");
  }
  // randomized
  out = random_search(G, cfg.seed, cfg.search_budget);
  prov.push_back("randomized search, seed " + std::to_string(cfg.seed) +
                 ", budget " + std::to_string(cfg.search_budget));
  if (out.verdict == BeauvilleOutcome::Verdict::unknown)
    prov.push_back("randomized search exhausted its budget: verdict unknown");
  return out;
}

// ---- reports ----------------------------------------------------------------

inline json witness_json(const Group& G, const std::array<Code, 4>& w) {
  json pairs = json::array();
  pairs.push_back(json::array(
      {G.oracle().element_repr(w[0]), G.oracle().element_repr(w[1])}));
  pairs.push_back(json::array(
      {G.oracle().element_repr(w[2]), G.oracle().element_repr(w[3])}));
  return json{{"pairs", pairs},
              {"codes", json::array({w[0], w[1], w[2], w[3]})}};
}

inline json certificate_json(const Certificate& c) {
  json j{{"kind", c.kind_name()}};
  switch (c.kind) {
    case Certificate::Kind::prop_negative:
      j["maximal_lines"] = json::array({c.line_a, c.line_b});
      break;
    case Certificate::Kind::cyclic_obstruction:
      j["central_generator_code"] = c.z;
      j["maximal_line"] = c.line_m;
      break;
    case Certificate::Kind::exhausted_signatures:
      j["signature_count"] = c.signature_count;
      break;
    case Certificate::Kind::rank_obstruction:
      j["rank"] = c.rank;
      break;
  }
  return j;
}

inline const char* verdict_name(BeauvilleOutcome::Verdict v) {
  switch (v) {
    case BeauvilleOutcome::Verdict::yes: return "yes";
    case BeauvilleOutcome::Verdict::no: return "no";
    case BeauvilleOutcome::Verdict::unknown: return "unknown";
  }
  return "?";
}

// Full analysis: structure data, power profile, classification flags, the
// characterisation verdict, certificates and the search outcome.
inline json analyze_to_report(const GroupInput& in, const ToolConfig& cfg,
                              bool run_search) {
  GroupConfig gc;
  gc.element_budget = cfg.element_budget;
  gc.seed = cfg.seed;
  Group G(in.oracle, in.gens, gc);
  std::vector<std::string> prov;

  json rep;
  rep["schema"] = "report-v1";
  rep["family"] = in.family;
  rep["params"] = in.params;
  rep["seed"] = cfg.seed;
  json grp;
  grp["order"] = G.order();
  grp["description"] = G.oracle().describe();
  if (G.prime()) {
    grp["p"] = G.prime();
    grp["order_exp"] = G.order_exp();
    grp["rank"] = G.rank();
  }
  grp["exponent"] = G.exponent();

  if (G.is_p_group() && G.prime() != 0) {
    PowerProfile pr = power_profile(G);
    grp["exponent_exp"] = pr.e;
    grp["nilpotency_class"] = pr.nilpotency_class;
    json prof;
    prof["agemo_orders"] = pr.agemo_orders;
    prof["omega_orders"] = pr.omega_orders;
    prof["omega_set_sizes"] = pr.omega_set_sizes;
    rep["power_profile"] = prof;
    CriteriaConfig cc;
    cc.semi_full_threshold = cfg.semi_threshold;
    cc.seed = cfg.seed;
    CriteriaFlags fl = classify(G, cc);
    json flags;
    flags["semi_p_e1_abelian"] = tri_name(fl.semi_pe1);
    if (fl.semi_witness) {
      flags["semi_witness"] =
          json::array({G.oracle().element_repr((*fl.semi_witness)[0]),
                       G.oracle().element_repr((*fl.semi_witness)[1])});
    }
    flags["potent"] = fl.potent;
    flags["powerful"] = fl.powerful;
    flags["p_central"] = fl.p_central;
    flags["generalised_p_central"] = fl.gen_p_central;
    flags["class_lt_p"] = fl.class_lt_p;
    rep["flags"] = flags;
    rep["theorem_a"] = thm_a_name(theorem_a_verdict(G, fl, pr));
  }
  rep["group"] = grp;

  if (run_search) {
    BeauvilleOutcome out = beauville_pipeline(G, in, cfg, prov);
    json bj;
    bj["verdict"] = verdict_name(out.verdict);
    bj["method"] = out.method;
    if (out.witness) bj["witness"] = witness_json(G, *out.witness);
    if (out.certificate) bj["certificate"] = certificate_json(*out.certificate);
    rep["beauville"] = bj;
  }
  rep["provenance"] = prov;
  return rep;
}

// ---- witness parsing ---------------------------------------------------------

// Words over the two generators: whitespace-separated factors name or
// name^exp, where the first generator answers to g1/u/a/t/x and the second to
// g2/v/b/y; "1" is the identity.
inline Code parse_element_word(const std::string& word, const Group& G) {
  if (G.gens().size() < 1) fail<InputError>("witness: group has no generators");
  auto gen_of = [&](const std::string& name) -> Code {
    static const char* first[] = {"g1", "u", "a", "t", "x"};
    static const char* second[] = {"g2", "v", "b", "y"};
    for (const char* n : first)
      if (name == n) return G.gens()[0];
    for (const char* n : second)
      if (name == n) {
        if (G.gens().size() < 2)
          fail<InputError>("witness: group has a single generator");
        return G.gens()[1];
      }
    fail<InputError>("witness: unknown generator name '" + name + "'");
  };
  std::istringstream in(word);
  std::string tok;
  Code acc = 0;
  while (in >> tok) {
    if (tok == "1") continue;
    std::string name = tok;
    i64 e = 1;
    if (auto caret = tok.find('^'); caret != std::string::npos) {
      name = tok.substr(0, caret);
      try {
        e = std::stoll(tok.substr(caret + 1));
      } catch (...) {
        fail<InputError>("witness: bad exponent in '" + tok + "'");
      }
    }
    Code g = gen_of(name);
    Code f = e >= 0 ? G.pow(g, u64(e)) : G.inv(G.pow(g, u64(-e)));
    acc = G.mul(acc, f);
  }
  return acc;
}

inline std::array<Code, 4> parse_witness_file(const json& w, const Group& G) {
  if (!w.contains("pairs") || !w["pairs"].is_array() || w["pairs"].size() != 2)
    fail<InputError>("witness: expected {\"pairs\": [[x1,y1],[x2,y2]]}");
  std::array<Code, 4> out{};
  for (int i = 0; i < 2; ++i) {
    const json& pr = w["pairs"][size_t(i)];
    if (!pr.is_array() || pr.size() != 2)
      fail<InputError>("witness: each pair must have two entries");
    for (int j = 0; j < 2; ++j) {
      const json& e = pr[size_t(j)];
      if (e.is_string()) {
        out[size_t(i * 2 + j)] = parse_element_word(e.get<std::string>(), G);
      } else if (e.is_array()) {
        // family-canonical coordinates (series coefficients, exponent tuples)
        std::vector<i64> cs;
        for (const auto& v : e) {
          if (!v.is_number_integer())
            fail<InputError>("witness: coordinates must be integers");
          cs.push_back(v.get<i64>());
        }
        Code c = G.oracle().element_from_coords(cs);
        if (c >= G.order()) fail<InputError>("witness: coordinates out of range");
        out[size_t(i * 2 + j)] = c;
      } else {
        fail<InputError>(
            "witness: element expressions must be words or coordinate arrays");
      }
    }
  }
  return out;
}

// ---- verdict table -----------------------------------------------------------

struct TableRow {
  QuotientSpec spec;
  u64 order = 0;
  std::string computed;  // yes | no | unknown
  std::string method;
  bool reference = false;
  std::string agree;  // yes | NO | indeterminate
};

inline std::vector<TableRow> nottingham_table(int p, int kmax,
                                              bool include_diamonds,
                                              const ToolConfig& cfg) {
  std::vector<TableRow> rows;
  auto run = [&](const QuotientSpec& qs, const json& params) {
    TableRow row;
    row.spec = qs;
    row.order = qs.order();
    row.reference = nottingham_verdict(qs);
    GroupInput in = build_group_input(params, cfg);
    std::vector<std::string> prov;
    GroupConfig gc;
    gc.element_budget = cfg.element_budget;
    gc.seed = cfg.seed;
    Group G(in.oracle, in.gens, gc);
    BeauvilleOutcome out = beauville_pipeline(G, in, cfg, prov);
    row.computed = verdict_name(out.verdict);
    row.method = out.method;
    if (out.verdict == BeauvilleOutcome::Verdict::unknown)
      row.agree = "indeterminate";
    else
      row.agree = (row.computed == (row.reference ? "yes" : "no")) ? "yes" : "NO";
    rows.push_back(row);
  };
  for (int k = 2; k <= kmax; ++k) {
    QuotientSpec qs = QuotientSpec::full_q(p, k);
    if (qs.order() > cfg.element_budget) break;
    run(qs, json{{"family", "nottingham"}, {"p", p}, {"k", k}});
  }
  if (include_diamonds) {
    for (int m = 1; zm(p, m) <= u64(kmax); ++m) {
      for (int alpha = -1; alpha < p; ++alpha) {
        QuotientSpec qs = QuotientSpec::diamond_q(p, m, alpha);
        if (qs.order() > cfg.element_budget) continue;
        json params{{"family", "nottingham-diamond"}, {"p", p}, {"m", m}};
        if (alpha < 0)
          params["alpha"] = "inf";
        else
          params["alpha"] = alpha;
        run(qs, params);
      }
    }
  }
  return rows;
}

inline json table_json(int p, const std::vector<TableRow>& rows) {
  json out;
  out["schema"] = "nottingham-table-v1";
  out["p"] = p;
  json arr = json::array();
  for (const auto& r : rows) {
    json j;
    j["quotient"] = r.spec.str();
    j["order"] = r.order;
    j["computed"] = r.computed;
    j["method"] = r.method;
    j["reference"] = r.reference ? "yes" : "no";
    j["agree"] = r.agree;
    arr.push_back(j);
  }
  out["rows"] = arr;
  return out;
}

inline std::string table_text(const std::vector<TableRow>& rows) {
  std::ostringstream os;
  os << "quotient              order       computed  method              reference  agree\n";
  for (const auto& r : rows) {
    char buf[160];
    std::snprintf(buf, sizeof buf, "%-20s  %-10llu  %-8s  %-18s  %-9s  %s\n",
                  r.spec.str().c_str(),
                  static_cast<unsigned long long>(r.order), r.computed.c_str(),
                  r.method.c_str(), r.reference ? "yes" : "no",
                  r.agree.c_str());
    os << buf;
  }
  return os.str();
}

}  // namespace beauville
