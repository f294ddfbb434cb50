#include "gsep/io.hpp"

#include <sstream>

#include "gsep/errors.hpp"

namespace gsep {

namespace {

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

Json matrix_to_json(const BitMatrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m.get(r, c) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return rows;
}

BitMatrix matrix_from_json(const Json& j, std::size_t d) {
  if (j.size() != d) throw InvalidArgument("matrix has the wrong number of rows");
  BitMatrix m(d, d);
  for (std::size_t r = 0; r < d; ++r) {
    if (j[r].size() != d) throw InvalidArgument("matrix row has the wrong length");
    for (std::size_t c = 0; c < d; ++c) m.set(r, c, j[r][c].get<int>() != 0);
  }
  return m;
}

Json occurrence_to_json(const OccurrenceRef& o) {
  return {{"var", o.var.name()}, {"side", side_name(o.side)}, {"path", o.path.str()}};
}

TermSide side_from_string(const std::string& s) {
  if (s == "s") return TermSide::S;
  if (s == "t") return TermSide::T;
  throw InvalidArgument("unknown term side " + s);
}

Construction construction_from_string(const std::string& s) {
  for (auto c : {Construction::Cover, Construction::Cycle, Construction::Search,
                 Construction::Unifier}) {
    if (s == construction_name(c)) return c;
  }
  throw InvalidArgument("unknown construction " + s);
}

Json statement_to_json(const Statement& s) { return s.to_string(); }

}  // namespace

Json term_to_json(const Term& t) {
  if (t.is_leaf()) return t.var().name();
  return Json::array({term_to_json(t.left()), term_to_json(t.right())});
}

Term term_from_json(const Json& j) {
  if (j.is_string()) return Term::var(j.get<std::string>());
  if (j.is_array() && j.size() == 2) return Term::node(term_from_json(j[0]), term_from_json(j[1]));
  throw InvalidArgument("a term is a variable name or a two-element array");
}

std::string cayley_to_csv(const CayleyGroupoid& g) {
  std::ostringstream os;
  os << g.order() << '\n';
  for (std::size_t a = 0; a < g.order(); ++a) {
    for (std::size_t b = 0; b < g.order(); ++b) {
      if (b) os << ',';
      os << g.op(static_cast<Element>(a), static_cast<Element>(b));
    }
    os << '\n';
  }
  return os.str();
}

CayleyGroupoid cayley_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw InvalidArgument("empty Cayley table");
  std::size_t n = 0;
  try {
    n = std::stoul(line);
  } catch (const std::exception&) {
    throw InvalidArgument("Cayley table must start with its order");
  }
  std::vector<Element> table;
  for (std::size_t a = 0; a < n; ++a) {
    if (!std::getline(in, line)) throw InvalidArgument("Cayley table has too few rows");
    std::istringstream row(line);
    std::string cell;
    std::size_t count = 0;
    while (std::getline(row, cell, ',')) {
      try {
        table.push_back(static_cast<Element>(std::stoul(cell)));
      } catch (const std::exception&) {
        throw InvalidArgument("bad Cayley table entry '" + cell + "'");
      }
      ++count;
    }
    if (count != n) throw InvalidArgument("Cayley table row has the wrong length");
  }
  return CayleyGroupoid(n, std::move(table));
}

Json cayley_to_json(const CayleyGroupoid& g) {
  Json rows = Json::array();
  for (std::size_t a = 0; a < g.order(); ++a) {
    Json row = Json::array();
    for (std::size_t b = 0; b < g.order(); ++b) {
      row.push_back(g.op(static_cast<Element>(a), static_cast<Element>(b)));
    }
    rows.push_back(std::move(row));
  }
  return {{"n", g.order()}, {"table", std::move(rows)}};
}

CayleyGroupoid cayley_from_json(const Json& j) {
  return guarded("Cayley table", [&] {
    const std::size_t n = j.at("n").get<std::size_t>();
    const Json& rows = j.at("table");
    if (rows.size() != n) throw InvalidArgument("Cayley table has the wrong number of rows");
    std::vector<Element> table;
    for (const auto& row : rows) {
      if (row.size() != n) throw InvalidArgument("Cayley table row has the wrong length");
      for (const auto& v : row) table.push_back(v.get<Element>());
    }
    return CayleyGroupoid(n, std::move(table));
  });
}

Json vec_groupoid_to_json(const VecGroupoid& g) {
  Json c = Json::array();
  for (std::size_t i = 0; i < g.dim(); ++i) c.push_back(g.c().get(i) ? 1 : 0);
  return {{"indices", g.indices()},
          {"A", matrix_to_json(g.a())},
          {"B", matrix_to_json(g.b())},
          {"c", std::move(c)}};
}

VecGroupoid vec_groupoid_from_json(const Json& j) {
  return guarded("groupoid", [&] {
    auto indices = j.at("indices").get<std::vector<Register>>();
    const std::size_t d = indices.size();
    BitVec c(d);
    const Json& cj = j.at("c");
    if (cj.size() != d) throw InvalidArgument("constant has the wrong length");
    for (std::size_t i = 0; i < d; ++i) c.set(i, cj[i].get<int>() != 0);
    return VecGroupoid(std::move(indices), matrix_from_json(j.at("A"), d),
                       matrix_from_json(j.at("B"), d), std::move(c));
  });
}

Json opsum_to_json(const OpSum& sum) {
  Json out = Json::array();
  for (const auto& op : sum.summands()) {
    out.push_back({{"m", op.source()},
                   {"p", op.path().str()},
                   {"n", op.target()},
                   {"tweaked", op.tweaked()}});
  }
  return out;
}

std::vector<OpSpec> opspecs_from_json(const Json& j) {
  return guarded("op sum", [&] {
    std::vector<OpSpec> specs;
    for (const auto& e : j) {
      specs.push_back({e.at("m").get<Register>(), Path::parse(e.at("p").get<std::string>()),
                       e.at("n").get<Register>(), e.value("tweaked", false)});
    }
    return specs;
  });
}

Json certificate_to_json(const Certificate& c) {
  return {{"construction", construction_name(c.kind)},
          {"opsum", opsum_to_json(c.opsum)},
          {"opsum_text", c.opsum.to_string()},
          {"groupoid", vec_groupoid_to_json(c.groupoid)},
          {"lambda", c.lambda}};
}

Certificate certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    const auto specs = opspecs_from_json(j.at("opsum"));
    OpSum sum = build_op_sum(specs);
    VecGroupoid g = vec_groupoid_from_json(j.at("groupoid"));
    return Certificate{construction_from_string(j.at("construction").get<std::string>()),
                       std::move(sum), std::move(g),
                       j.at("lambda").get<std::vector<Register>>()};
  });
}

Json cover_to_json(const CoverWitness& w) {
  return {{"variable", w.variable.name()},
          {"shallow", {{"side", side_name(w.shallow_side)}, {"path", w.shallow.str()}}},
          {"deep", {{"side", side_name(w.deep_side)}, {"path", w.deep.str()}}},
          {"extension", w.extension().str()}};
}

Json cycle_to_json(const CycleWitness& w) {
  Json entries = Json::array();
  for (std::size_t i = 0; i < w.k(); ++i) {
    entries.push_back({{"var", w.entries[i].var.name()},
                       {"up", occurrence_to_json(w.entries[i].up)},
                       {"down", occurrence_to_json(w.entries[i].down)},
                       {"p", w.p[i].str()},
                       {"q", w.q[i].str()},
                       {"f", w.f[i]}});
  }
  return {{"k", w.k()}, {"entries", std::move(entries)}};
}

Json substitution_to_json(const Substitution& s) {
  Json out = Json::object();
  for (const auto& [v, t] : s.bindings()) out[v.name()] = render_term(t);
  return out;
}

Json unify_to_json(const UnifyOutcome& u) {
  Json trace = Json::array();
  for (const auto& step : u.trace) {
    Json rewritten = Json::array();
    for (const auto& st : step.rewritten) rewritten.push_back(statement_to_json(st));
    Json produced = Json::array();
    for (const auto& st : step.produced) produced.push_back(statement_to_json(st));
    trace.push_back({{"rule", rule_name(step.rule)},
                     {"consumed", statement_to_json(step.consumed)},
                     {"rewritten", std::move(rewritten)},
                     {"produced", std::move(produced)}});
  }
  Json out{{"unifiable", u.unifiable()}};
  out["unifier"] = u.unifier ? substitution_to_json(*u.unifier) : Json(nullptr);
  out["trace"] = std::move(trace);
  return out;
}

Json separability_to_json(const FiniteSeparability& r) {
  Json out{{"verdict", verdict_name(r.verdict)},
           {"construction", construction_name(r.construction)}};
  if (r.unifier) out["unifier"] = substitution_to_json(*r.unifier);
  if (r.certificate) {
    out["opsum"] = opsum_to_json(r.certificate->opsum);
    out["opsum_text"] = r.certificate->opsum.to_string();
    out["groupoid"] = vec_groupoid_to_json(r.certificate->groupoid);
    out["lambda"] = r.certificate->lambda;
  }
  if (r.cover) out["cover"] = cover_to_json(*r.cover);
  if (r.cycle) out["cycle"] = cycle_to_json(*r.cycle);
  if (r.construction == Construction::Search) out["candidates_tested"] = r.candidates_tested;
  return out;
}

Json census_to_json(const CensusReport& r) {
  return {{"n", r.n},
          {"total_tables", r.total_tables},
          {"antiassociative_count", r.antiassociative_count},
          {"literally_deranged_count", r.literally_deranged_count},
          {"elapsed_seconds", r.elapsed_seconds},
          {"workers", r.workers}};
}

Json antiassoc_to_json(const AntiassocBuild& b) {
  Json terms = Json::array();
  for (const auto& t : b.terms) terms.push_back(render_term(t));
  Json factors = Json::array();
  for (const auto& f : b.factors) {
    factors.push_back({{"first", f.first},
                       {"second", f.second},
                       {"witness", cover_to_json(f.witness)},
                       {"shift", f.shift},
                       {"certificate", certificate_to_json(f.certificate)}});
  }
  return {{"k", b.k},
          {"terms", std::move(terms)},
          {"factors", std::move(factors)},
          {"groupoid", vec_groupoid_to_json(b.groupoid)}};
}

AntiassocBuild antiassoc_from_json(const Json& j) {
  return guarded("antiassociative build", [&] {
    AntiassocBuild b{j.at("k").get<std::size_t>(), {}, {},
                     vec_groupoid_from_json(j.at("groupoid"))};
    for (const auto& t : j.at("terms")) b.terms.push_back(parse_term(t.get<std::string>()));
    for (const auto& f : j.at("factors")) {
      const Json& w = f.at("witness");
      CoverWitness cw{VarId(w.at("variable").get<std::string>()),
                      side_from_string(w.at("shallow").at("side").get<std::string>()),
                      Path::parse(w.at("shallow").at("path").get<std::string>()),
                      side_from_string(w.at("deep").at("side").get<std::string>()),
                      Path::parse(w.at("deep").at("path").get<std::string>())};
      const std::size_t first = f.at("first").get<std::size_t>();
      const std::size_t second = f.at("second").get<std::size_t>();
      if (first >= b.terms.size() || second >= b.terms.size()) {
        throw InvalidArgument("factor refers to a missing term");
      }
      b.factors.push_back({first, second, std::move(cw), certificate_from_json(f.at("certificate")),
                           f.at("shift").get<Register>()});
    }
    return b;
  });
}

}  // namespace gsep
