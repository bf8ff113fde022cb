#include "conicrank/claims.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <functional>
#include <iomanip>
#include <sstream>

#include "conicrank/parallel.hpp"
#include "json.hpp"

namespace conicrank {

namespace {

using Clock = std::chrono::steady_clock;

const std::string kT = "binom(p+1,2)^e";

std::string format_seconds(double s) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, s);
  return ec == std::errc{} ? std::string(buf, end) : std::to_string(s);
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> cells(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cells.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cells.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      cells.emplace_back();
    } else {
      cells.back() += c;
    }
  }
  return cells;
}

nlohmann::ordered_json census_json(const Census& c) {
  nlohmann::ordered_json j;
  j["lines"] = {{"tangent", c.line_counts[0]}, {"skew", c.line_counts[1]}, {"secant", c.line_counts[2]}};
  j["points"] = {{"absolute", c.point_counts[0]}, {"internal", c.point_counts[1]}, {"external", c.point_counts[2]}};
  auto& lp = j["points_on_lines"];
  for (LineClass lc : {LineClass::Tangent, LineClass::Secant, LineClass::Skew}) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : c.line_profiles[static_cast<std::size_t>(lc)]) {
      arr.push_back({{"absolute", p.absolute}, {"external", p.external}, {"internal", p.internal}});
    }
    lp[to_string(lc)] = arr;
  }
  auto& pl = j["lines_through_points"];
  for (PointClass pc : {PointClass::Absolute, PointClass::External, PointClass::Internal}) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : c.point_profiles[static_cast<std::size_t>(pc)]) {
      arr.push_back({{"tangent", p.tangent}, {"secant", p.secant}, {"skew", p.skew}});
    }
    pl[to_string(pc)] = arr;
  }
  return j;
}

nlohmann::ordered_json report_json(const Report& r) {
  nlohmann::ordered_json j;
  j["q"] = r.q;
  j["p"] = r.p;
  j["e"] = r.e;
  j["modulus"] = r.modulus;
  auto claims = nlohmann::ordered_json::array();
  for (const auto& c : r.claims) {
    nlohmann::ordered_json cj;
    cj["id"] = c.id;
    cj["source"] = c.source;
    cj["predicted"] = c.predicted;
    if (c.computed) {
      cj["computed"] = *c.computed;
    } else {
      cj["computed"] = nullptr;
    }
    cj["status"] = to_string(c.status);
    cj["seconds"] = c.seconds;
    if (c.status == ClaimStatus::Skipped) cj["reason"] = c.skip_reason;
    if (c.status == ClaimStatus::Mismatch) cj["expected"] = r.expected_mismatch.count(c.id) > 0;
    claims.push_back(cj);
  }
  j["claims"] = claims;
  j["census_ok"] = r.census_ok;
  if (r.s_relations) {
    j["s_relations_ok"] = r.s_relations->ok();
  } else {
    j["s_relations_ok"] = nullptr;
  }
  j["census"] = census_json(r.census);
  if (r.s_relations) {
    auto rel = nlohmann::ordered_json::array();
    for (const auto& c : r.s_relations->checks) {
      rel.push_back({{"name", c.name}, {"rank_s", c.rank_s}, {"rank_a", c.rank_a}, {"ok", c.ok}});
    }
    j["s_relations"] = {{"checks", rel}, {"column_sum_zero", r.s_relations->column_sum_zero}};
  }
  auto probes = nlohmann::ordered_json::array();
  for (const auto& p : r.span_probes) {
    probes.push_back({{"name", p.name}, {"lhs", p.lhs}, {"rhs", p.rhs}, {"holds", p.holds}});
  }
  j["span_probes"] = probes;
  if (r.j_profile_external) {
    nlohmann::ordered_json values = nlohmann::ordered_json::object();
    for (const auto& [v, n] : r.j_profile_external->histogram) values[std::to_string(v)] = n;
    j["j_profile_external"] = {{"size", r.j_profile_external->values.size()},
                               {"zero_count", r.j_profile_external->zero_count},
                               {"values", values}};
  }
  j["expected_mismatch"] = r.expected_mismatch;
  return j;
}

}  // namespace

long long triangular_power(unsigned p, unsigned e) {
  const long long t = static_cast<long long>(p) * (p + 1) / 2;
  long long out = 1;
  for (unsigned i = 0; i < e; ++i) out *= t;
  return out;
}

const std::vector<ClaimDefinition>& claim_ledger() {
  static const std::vector<ClaimDefinition> ledger{
      {"rank_A", kT + " + 1"},
      {"rank_A_nonsec", kT + " + 1"},
      {"rank_A_sec", kT},
      {"rank_A_sk", kT + " - q"},
      {"rank_A_11", "q + 1"},
      {"rank_A_12", "0"},
      {"rank_A_21", "0"},
      {"rank_A_13", "q"},
      {"rank_A_31", "q"},
      {"rank_A_22", kT + " - q"},
      {"rank_A_23", kT + " - q"},
      {"rank_A_32", kT + " - q"},
      {"rank_A_33", kT},
      {"rank_S_21", "1"},
      {"dim_M_Sk", kT + " - q"},
      {"dim_M_Se", kT},
      {"dim_M_T", "q + 1"},
  };
  return ledger;
}

long long predict(const std::string& id, unsigned p, unsigned e) {
  const long long t = triangular_power(p, e);
  long long q = 1;
  for (unsigned i = 0; i < e; ++i) q *= p;
  if (id == "rank_A" || id == "rank_A_nonsec") return t + 1;
  if (id == "rank_A_sec" || id == "rank_A_33" || id == "dim_M_Se") return t;
  if (id == "rank_A_sk" || id == "rank_A_22" || id == "rank_A_23" || id == "rank_A_32" || id == "dim_M_Sk") {
    return t - q;
  }
  if (id == "rank_A_11" || id == "dim_M_T") return q + 1;
  if (id == "rank_A_12" || id == "rank_A_21") return 0;
  if (id == "rank_A_13" || id == "rank_A_31") return q;
  if (id == "rank_S_21") return 1;
  throw UnknownClaim("unknown claim '" + id + "'");
}

const char* to_string(ClaimStatus s) {
  switch (s) {
    case ClaimStatus::Match: return "Match";
    case ClaimStatus::Mismatch: return "Mismatch";
    case ClaimStatus::Skipped: return "Skipped";
  }
  return "?";
}

ClaimStatus parse_claim_status(const std::string& s) {
  if (s == "Match") return ClaimStatus::Match;
  if (s == "Mismatch") return ClaimStatus::Mismatch;
  if (s == "Skipped") return ClaimStatus::Skipped;
  throw std::invalid_argument("unknown claim status '" + s + "'");
}

const ClaimRecord& Report::claim(const std::string& id) const {
  for (const auto& c : claims) {
    if (c.id == id) return c;
  }
  throw UnknownClaim("report has no claim '" + id + "'");
}

std::vector<std::string> Report::unexpected_mismatches() const {
  std::vector<std::string> out;
  for (const auto& c : claims) {
    if (c.status == ClaimStatus::Mismatch && !expected_mismatch.count(c.id)) out.push_back(c.id);
  }
  return out;
}

int Report::exit_code() const { return (unexpected_mismatches().empty() && census_ok) ? 0 : 2; }

Report verify(const VerifyConfig& config) {
  const Field& f = *config.field;
  Report report;
  report.q = f.order();
  report.p = f.characteristic();
  report.e = f.degree();
  report.modulus = f.modulus_string();
  report.expected_mismatch = config.expected_mismatch;

  const Plane plane(config.field);
  const PartitionedIncidence a = build_A(plane);
  std::optional<PartitionedIncidence> s;
  std::string s_unavailable;
  try {
    s = build_S(f, config.s_guard);
  } catch (const IncidenceError& err) {
    s_unavailable = err.what();
  }
  const bool spans_allowed = f.order() <= config.s_guard;

  auto a_rank = [&](BlockSelector sel) {
    return [&a, sel]() -> long long { return static_cast<long long>(rank(get_block(a, sel)).rank); };
  };
  auto span = [&f, &config](LocusTag tag) {
    return [&f, &config, tag]() -> long long { return static_cast<long long>(span_dim(f, tag, LocusTag::Full, config.s_guard)); };
  };
  using Task = std::function<long long()>;
  std::vector<Task> tasks;
  for (const auto& def : claim_ledger()) {
    const std::string& id = def.id;
    if (id == "rank_A") tasks.push_back(a_rank(BlockSelector::group(IncidenceKind::A, Aggregate::Whole)));
    else if (id == "rank_A_nonsec") tasks.push_back(a_rank(BlockSelector::group(IncidenceKind::A, Aggregate::NonSec)));
    else if (id == "rank_A_sec") tasks.push_back(a_rank(BlockSelector::group(IncidenceKind::A, Aggregate::Sec)));
    else if (id == "rank_A_sk") tasks.push_back(a_rank(BlockSelector::group(IncidenceKind::A, Aggregate::Sk)));
    else if (id.rfind("rank_A_", 0) == 0) tasks.push_back(a_rank(BlockSelector::parse("A" + id.substr(7))));
    else if (id == "rank_S_21") {
      tasks.push_back([&s, &s_unavailable]() -> long long {
        if (!s) throw IncidenceError(IncidenceError::Kind::SizeGuardExceeded, s_unavailable);
        return static_cast<long long>(rank(get_block(*s, BlockSelector::cell(IncidenceKind::S, 2, 1))).rank);
      });
    } else if (id == "dim_M_Sk") tasks.push_back(span(LocusTag::ZSk));
    else if (id == "dim_M_Se") tasks.push_back(span(LocusTag::ZSe));
    else if (id == "dim_M_T") tasks.push_back(span(LocusTag::ZT));
    else throw UnknownClaim("no computation registered for '" + id + "'");
  }

  report.claims.resize(tasks.size());
  parallel_for(tasks.size(), config.threads, [&](std::size_t k) {
    const auto& def = claim_ledger()[k];
    ClaimRecord& rec = report.claims[k];
    rec.id = def.id;
    rec.source = def.source;
    rec.predicted = predict(def.id, f.characteristic(), f.degree());
    const auto start = Clock::now();
    try {
      rec.computed = tasks[k]();
      rec.status = *rec.computed == rec.predicted ? ClaimStatus::Match : ClaimStatus::Mismatch;
    } catch (const std::exception& err) {
      rec.status = ClaimStatus::Skipped;
      rec.skip_reason = err.what();
    }
    rec.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  });

  report.census = plane.global_census();
  report.census_ok = census_matches(report.census, expected_census(f.order()));

  if (s) report.s_relations = check_S_A_relations(a, *s, config.threads);

  if (spans_allowed) {
    struct ProbeDef {
      std::string name;
      LocusTag rows;
      LocusTag restricted;
      std::size_t offset;  // added to the restricted span
    };
    const std::vector<ProbeDef> defs{
        {"span(ZSk on ZI) = span(ZSk on Full)", LocusTag::ZSk, LocusTag::ZI, 0},
        {"span(ZSe on ZE) = span(ZSe on Full)", LocusTag::ZSe, LocusTag::ZE, 0},
        {"span(ZSk on ZE) = span(ZSk on Full)", LocusTag::ZSk, LocusTag::ZE, 0},
        {"span(ZT on ZE) + 1 = span(ZT on Full)", LocusTag::ZT, LocusTag::ZE, 1},
    };
    report.span_probes.resize(defs.size());
    parallel_for(defs.size(), config.threads, [&](std::size_t k) {
      const auto& d = defs[k];
      SpanProbe& probe = report.span_probes[k];
      probe.name = d.name;
      probe.lhs = span_dim(f, d.rows, d.restricted, config.s_guard) + d.offset;
      probe.rhs = span_dim(f, d.rows, LocusTag::Full, config.s_guard);
      probe.holds = probe.lhs == probe.rhs;
    });
    report.j_profile_external = j_profile(f, LocusTag::ZE);
  }
  return report;
}

void write_report_json(std::ostream& os, const Report& report) { os << report_json(report).dump(2) << '\n'; }

void write_report_json(std::ostream& os, const std::vector<Report>& reports) {
  if (reports.size() == 1) {
    write_report_json(os, reports.front());
    return;
  }
  auto arr = nlohmann::ordered_json::array();
  for (const auto& r : reports) arr.push_back(report_json(r));
  os << arr.dump(2) << '\n';
}

void write_report_csv(std::ostream& os, const std::vector<Report>& reports) {
  os << "q,id,source,predicted,computed,status,seconds,reason\n";
  for (const auto& r : reports) {
    for (const auto& c : r.claims) {
      os << r.q << ',' << c.id << ',' << csv_quote(c.source) << ',' << c.predicted << ','
         << (c.computed ? std::to_string(*c.computed) : std::string()) << ',' << to_string(c.status) << ','
         << format_seconds(c.seconds) << ',' << csv_quote(c.skip_reason) << '\n';
    }
  }
}

std::vector<CsvClaimRow> read_report_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "q,id,source,predicted,computed,status,seconds,reason") {
    throw std::invalid_argument("unexpected report CSV header");
  }
  std::vector<CsvClaimRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto cells = csv_split(line);
    if (cells.size() != 8) throw std::invalid_argument("report CSV row has " + std::to_string(cells.size()) + " cells");
    CsvClaimRow row;
    row.q = std::stoull(cells[0]);
    row.record.id = cells[1];
    row.record.source = cells[2];
    row.record.predicted = std::stoll(cells[3]);
    if (!cells[4].empty()) row.record.computed = std::stoll(cells[4]);
    row.record.status = parse_claim_status(cells[5]);
    std::from_chars(cells[6].data(), cells[6].data() + cells[6].size(), row.record.seconds);
    row.record.skip_reason = cells[7];
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_report_table(std::ostream& os, const Report& r) {
  os << "PG(2," << r.q << ")  p=" << r.p << " e=" << r.e << " modulus " << r.modulus << '\n';
  os << "  " << std::left << std::setw(15) << "claim" << std::setw(22) << "closed form" << std::right << std::setw(10)
     << "predicted" << std::setw(10) << "computed" << "  " << std::left << std::setw(9) << "status" << std::right
     << std::setw(10) << "seconds" << '\n';
  for (const auto& c : r.claims) {
    const bool flagged = c.status == ClaimStatus::Mismatch;
    const bool expected = flagged && r.expected_mismatch.count(c.id) > 0;
    os << (flagged ? (expected ? "! " : "!!") : "  ") << std::left << std::setw(15) << c.id << std::setw(22)
       << c.source << std::right << std::setw(10) << c.predicted << std::setw(10)
       << (c.computed ? std::to_string(*c.computed) : std::string("-")) << "  " << std::left << std::setw(9)
       << to_string(c.status) << std::right << std::setw(10) << std::fixed << std::setprecision(4) << c.seconds
       << std::defaultfloat;
    if (c.status == ClaimStatus::Skipped) os << "  (" << c.skip_reason << ")";
    os << '\n';
  }
  os << "  census " << (r.census_ok ? "ok" : "MISMATCH") << "; S relations "
     << (r.s_relations ? (r.s_relations->ok() ? "ok" : "MISMATCH") : "skipped") << '\n';
  for (const auto& p : r.span_probes) {
    os << "  probe " << p.name << ": " << p.lhs << " vs " << p.rhs << (p.holds ? "" : "  [does not hold]") << '\n';
  }
  if (r.j_profile_external) {
    os << "  J on ZE: " << r.j_profile_external->values.size() << " vectors, " << r.j_profile_external->zero_count
       << " zeros, values";
    for (const auto& [v, n] : r.j_profile_external->histogram) os << ' ' << v << "x" << n;
    os << '\n';
  }
  os << "  ! marks a mismatch on the expected list, !! an unexpected one\n";
}

}  // namespace conicrank
