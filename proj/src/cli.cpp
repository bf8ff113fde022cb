#include "conicrank/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conicrank/claims.hpp"
#include "conicrank/incidence.hpp"
#include "conicrank/matrix_io.hpp"
#include "conicrank/plane_geometry.hpp"
#include "conicrank/poly_spaces.hpp"
#include "json.hpp"

namespace conicrank {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CliConfig {
  std::optional<std::uint64_t> q;
  std::optional<unsigned> p;
  std::optional<unsigned> e;
  std::string modulus;
  unsigned s_guard = kDefaultSizeGuard;
  std::vector<std::uint64_t> suite{3, 5, 7, 9, 11, 13};
  std::string block = "A";
  std::string format;
  std::string out;
  std::vector<std::string> expect_mismatch{default_expected_mismatches().begin(),
                                           default_expected_mismatches().end()};
  unsigned threads = 1;
};

struct FieldChoice {
  unsigned p;
  unsigned e;
};

void add_common_options(CLI::App& cmd, CliConfig& cfg) {
  cmd.add_option("--q", cfg.q, "field order q = p^e (odd)");
  cmd.add_option("--p", cfg.p, "characteristic (odd prime)");
  cmd.add_option("--e", cfg.e, "extension degree");
  cmd.add_option("--modulus", cfg.modulus, "modulus coefficients, constant term first, e.g. 1,0,1");
  cmd.add_option("--s-guard", cfg.s_guard, "largest q for which S and evaluation spans are built")
      ->capture_default_str();
  cmd.add_option("--suite", cfg.suite, "q values used when --q/--p are absent")->capture_default_str();
  cmd.add_option("--format", cfg.format, "output format");
  cmd.add_option("--out", cfg.out, "output file (default stdout)");
  cmd.add_option("--threads", cfg.threads, "worker threads")->capture_default_str();
}

// Validates every requested q before anything is built.
std::vector<FieldChoice> resolve_fields(const CliConfig& cfg, bool allow_suite) {
  std::vector<FieldChoice> out;
  try {
    if (cfg.q || cfg.p) {
      if (cfg.e && !cfg.p) throw UsageError("--e requires --p");
      FieldChoice choice{};
      if (cfg.p) {
        const unsigned e = cfg.e.value_or(1);
        if (*cfg.p == 2) throw FieldError(FieldError::Kind::EvenCharacteristic, "characteristic 2 is not supported");
        if (!is_prime(*cfg.p)) throw FieldError(FieldError::Kind::NonPrime, std::to_string(*cfg.p) + " is not prime");
        if (e == 0) throw UsageError("--e must be positive");
        choice = {*cfg.p, e};
        if (cfg.q) {
          auto [qp, qe] = factor_prime_power(*cfg.q);
          if (qp != choice.p || qe != choice.e) throw UsageError("--q disagrees with --p/--e");
        }
      } else {
        auto [qp, qe] = factor_prime_power(*cfg.q);
        choice = {qp, qe};
      }
      out.push_back(choice);
    } else {
      if (!allow_suite) throw UsageError("this command needs --q or --p/--e");
      if (cfg.suite.empty()) throw UsageError("--suite is empty");
      for (auto q : cfg.suite) {
        auto [p, e] = factor_prime_power(q);
        out.push_back({p, e});
      }
    }
  } catch (const FieldError& err) {
    throw UsageError(err.what());
  }
  if (!cfg.modulus.empty() && out.size() != 1) throw UsageError("--modulus needs a single field");
  if (cfg.s_guard > kMaxSizeGuard) {
    throw UsageError("--s-guard may not exceed " + std::to_string(kMaxSizeGuard));
  }
  if (cfg.threads == 0) throw UsageError("--threads must be positive");
  return out;
}

std::shared_ptr<const Field> make_field(const CliConfig& cfg, const FieldChoice& choice) {
  std::optional<std::vector<unsigned>> modulus;
  try {
    if (!cfg.modulus.empty()) modulus = parse_modulus(cfg.modulus);
    return Field::make(choice.p, choice.e, modulus);
  } catch (const FieldError& err) {
    throw UsageError(err.what());
  }
}

std::uint64_t order_of(const FieldChoice& c) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < c.e; ++i) q *= c.p;
  return q;
}

void require_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += std::string(list.empty() ? "" : ", ") + a;
  throw UsageError("format '" + format + "' not supported here (use " + list + ")");
}

void warn_large_guard(const CliConfig& cfg, const std::vector<FieldChoice>& fields, std::ostream& err) {
  if (cfg.s_guard <= kDefaultSizeGuard) return;
  for (const auto& f : fields) {
    const auto q = order_of(f);
    if (q > kDefaultSizeGuard && q <= cfg.s_guard) {
      err << "warning: building S for q=" << q << " (" << (q * q * q - 1) << " x " << q * q * q
          << "); this may take a while\n";
    }
  }
}

// Writes to --out or to the provided stream.
void emit(const CliConfig& cfg, std::ostream& out, const std::function<void(std::ostream&)>& body) {
  if (cfg.out.empty()) {
    body(out);
    return;
  }
  std::ofstream file(cfg.out);
  if (!file) throw std::runtime_error("cannot open " + cfg.out + " for writing");
  body(file);
  if (!file) throw std::runtime_error("failed writing " + cfg.out);
}

int cmd_verify(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto fields = resolve_fields(cfg, true);
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  require_format(format, {"json", "csv", "table"});
  std::set<std::string> expected;
  for (const auto& id : cfg.expect_mismatch) {
    if (id == "none") continue;
    const auto& ledger = claim_ledger();
    if (std::none_of(ledger.begin(), ledger.end(), [&](const auto& d) { return d.id == id; })) {
      throw UsageError("unknown claim id '" + id + "' in --expect-mismatch");
    }
    expected.insert(id);
  }
  warn_large_guard(cfg, fields, err);

  std::vector<Report> reports;
  for (const auto& choice : fields) {
    VerifyConfig vc;
    vc.field = make_field(cfg, choice);
    vc.s_guard = cfg.s_guard;
    vc.expected_mismatch = expected;
    vc.threads = cfg.threads;
    reports.push_back(verify(vc));
  }
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      write_report_json(os, reports);
    } else if (format == "csv") {
      write_report_csv(os, reports);
    } else {
      for (const auto& r : reports) write_report_table(os, r);
    }
  });
  int code = kExitOk;
  for (const auto& r : reports) {
    for (const auto& id : r.unexpected_mismatches()) err << "unexpected mismatch at q=" << r.q << ": " << id << '\n';
    if (!r.census_ok) err << "census mismatch at q=" << r.q << '\n';
    code = std::max(code, r.exit_code());
  }
  return code;
}

int cmd_census(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const auto fields = resolve_fields(cfg, true);
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  require_format(format, {"table", "csv"});
  int code = kExitOk;
  std::ostringstream buffer;
  for (const auto& choice : fields) {
    const auto field = make_field(cfg, choice);
    const Plane plane(field);
    const Census c = plane.global_census();
    const bool ok = census_matches(c, expected_census(field->order()));
    if (!ok) code = kExitMismatch;
    if (format == "csv") {
      if (fields.size() > 1) buffer << "# q=" << field->order() << '\n';
      write_census_csv(buffer, c);
    } else {
      write_census_table(buffer, c, field->order());
      buffer << "  matches closed forms: " << (ok ? "yes" : "NO") << "\n\n";
    }
  }
  emit(cfg, out, [&](std::ostream& os) { os << buffer.str(); });
  return code;
}

int cmd_export(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto fields = resolve_fields(cfg, false);
  const std::string format = cfg.format.empty() ? "csv" : cfg.format;
  require_format(format, {"csv", "alist", "json"});
  BlockSelector sel;
  try {
    sel = BlockSelector::parse(cfg.block);
  } catch (const IncidenceError& e) {
    throw UsageError(e.what());
  }
  warn_large_guard(cfg, fields, err);
  const auto field = make_field(cfg, fields.front());
  std::optional<PartitionedIncidence> part;
  if (sel.part == IncidenceKind::A) {
    part = build_A(Plane(field));
  } else {
    part = build_S(*field, cfg.s_guard);
  }
  const DenseMatrix m = get_block(*part, sel);

  MatrixMetadata meta;
  meta.q = field->order();
  meta.p = field->characteristic();
  meta.e = field->degree();
  meta.modulus = field->modulus_string();
  meta.block = sel.name();
  meta.rows = m.rows();
  meta.cols = m.cols();
  meta.rank = rank(m).rank;

  emit(cfg, out, [&](std::ostream& os) {
    if (format == "csv") {
      write_dense_csv(os, m);
    } else if (format == "alist") {
      write_alist(os, m);
    } else {
      write_metadata_json(os, meta);
    }
  });
  if (!cfg.out.empty() && format != "json") {
    std::ofstream sidecar(cfg.out + ".json");
    if (!sidecar) throw std::runtime_error("cannot write " + cfg.out + ".json");
    write_metadata_json(sidecar, meta);
  }
  return kExitOk;
}

int cmd_nullstellensatz(const CliConfig& cfg, std::ostream& out, std::ostream&) {
  const auto fields = resolve_fields(cfg, true);
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  require_format(format, {"table", "json"});
  int code = kExitOk;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto& choice : fields) {
    const auto field = make_field(cfg, choice);
    const Field& f = *field;
    text << "q=" << f.order() << '\n';
    for (unsigned d = 1; d + 1 <= f.order(); ++d) {
      for (auto variant : {NullstellensatzVariant::SquareLocus, NullstellensatzVariant::NonSquareOrZeroLocus}) {
        const auto res = nullstellensatz_check(f, d, variant);
        if (!res.passed) code = kExitMismatch;
        text << "  d=" << d << ' ' << to_string(variant) << ": rank " << res.rank << " of " << res.monomials << ' '
             << (res.passed ? "PASS" : "FAIL") << '\n';
        nlohmann::ordered_json j{{"q", f.order()},          {"degree", d},
                                 {"variant", to_string(variant)}, {"monomials", res.monomials},
                                 {"locus_size", res.locus_size},  {"rank", res.rank},
                                 {"passed", res.passed}};
        if (!res.passed) {
          auto kernel = nlohmann::ordered_json::array();
          for (const auto& v : res.kernel) {
            std::string poly;
            for (std::size_t i = 0; i < v.size(); ++i) {
              if (v[i] == 0) continue;
              if (!poly.empty()) poly += " + ";
              poly += std::to_string(v[i]) + "*" + format_monomial(res.basis.exponents[i]);
            }
            text << "    vanishing form: " << poly << '\n';
            kernel.push_back(poly);
          }
          j["kernel"] = kernel;
        }
        all.push_back(j);
      }
    }
  }
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      os << all.dump(2) << '\n';
    } else {
      os << text.str();
    }
  });
  return code;
}

int cmd_polyspace(const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto fields = resolve_fields(cfg, true);
  const std::string format = cfg.format.empty() ? "table" : cfg.format;
  require_format(format, {"table", "json"});
  for (const auto& choice : fields) {
    if (order_of(choice) > cfg.s_guard) {
      throw IncidenceError(IncidenceError::Kind::SizeGuardExceeded,
                           "q=" + std::to_string(order_of(choice)) + " exceeds --s-guard " +
                               std::to_string(cfg.s_guard));
    }
  }
  warn_large_guard(cfg, fields, err);
  int code = kExitOk;
  nlohmann::ordered_json all = nlohmann::ordered_json::array();
  std::ostringstream text;
  for (const auto& choice : fields) {
    const auto field = make_field(cfg, choice);
    const Field& f = *field;
    nlohmann::ordered_json j{{"q", f.order()}};
    text << "q=" << f.order() << '\n';
    for (auto [id, tag] : {std::pair{"dim_M_Sk", LocusTag::ZSk}, std::pair{"dim_M_Se", LocusTag::ZSe},
                           std::pair{"dim_M_T", LocusTag::ZT}}) {
      const auto dim = span_dim(f, tag, LocusTag::Full, cfg.s_guard);
      const auto predicted = predict(id, f.characteristic(), f.degree());
      if (static_cast<long long>(dim) != predicted) code = kExitMismatch;
      text << "  " << id << " = " << dim << " (closed form " << predicted << ")\n";
      j[id] = {{"computed", dim}, {"predicted", predicted}};
    }
    const auto tangent_on_external = span_dim(f, LocusTag::ZT, LocusTag::ZE, cfg.s_guard);
    const auto jp = j_profile(f, LocusTag::ZE);
    text << "  span(ZT on ZE) = " << tangent_on_external << '\n';
    text << "  J on ZE: " << jp.values.size() << " vectors, " << jp.zero_count << " zeros, values";
    nlohmann::ordered_json hist = nlohmann::ordered_json::object();
    for (const auto& [v, n] : jp.histogram) {
      text << ' ' << v << "x" << n;
      hist[std::to_string(v)] = n;
    }
    text << '\n';
    j["span_ZT_on_ZE"] = tangent_on_external;
    j["j_profile_external"] = {{"size", jp.values.size()}, {"zero_count", jp.zero_count}, {"values", hist}};
    all.push_back(j);
  }
  emit(cfg, out, [&](std::ostream& os) {
    if (format == "json") {
      os << all.dump(2) << '\n';
    } else {
      os << text.str();
    }
  });
  return code;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Ranks of the conic-partitioned incidence matrix of PG(2,q)", "conicrank"};
  app.require_subcommand(1);
  CliConfig cfg;

  auto* verify_cmd = app.add_subcommand("verify", "compare every closed-form rank with elimination");
  auto* census_cmd = app.add_subcommand("census", "point and line class counts");
  auto* export_cmd = app.add_subcommand("export", "dump an incidence matrix or block");
  auto* null_cmd = app.add_subcommand("nullstellensatz", "kernel checks of monomial evaluation matrices");
  auto* poly_cmd = app.add_subcommand("polyspace", "evaluation span dimensions and the J profile");
  for (auto* cmd : {verify_cmd, census_cmd, export_cmd, null_cmd, poly_cmd}) add_common_options(*cmd, cfg);
  verify_cmd->add_option("--expect-mismatch", cfg.expect_mismatch, "claim ids allowed to mismatch ('none' for none)")
      ->capture_default_str();
  export_cmd->add_option("--block", cfg.block, "A, S, A13, S21, Asec, Anonsec, Ask, AT, ...")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (verify_cmd->parsed()) return cmd_verify(cfg, out, err);
    if (census_cmd->parsed()) return cmd_census(cfg, out, err);
    if (export_cmd->parsed()) return cmd_export(cfg, out, err);
    if (null_cmd->parsed()) return cmd_nullstellensatz(cfg, out, err);
    if (poly_cmd->parsed()) return cmd_polyspace(cfg, out, err);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const IncidenceError& e) {
    err << e.what() << '\n';
    return e.kind() == IncidenceError::Kind::SizeGuardExceeded ? kExitSizeGuard : kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitUsage;
}

}  // namespace conicrank
