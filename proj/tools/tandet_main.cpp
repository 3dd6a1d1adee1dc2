// tandet: certified evaluation of tangent/cotangent determinant families,
// closed-form verification sweeps, and conjecture scans.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "tandet/harness.hpp"
#include "tandet/ntheory.hpp"
#include "tandet/oeis.hpp"
#include "tandet/store.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace tandet;
using harness::Range;
using harness::RunConfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRefuted = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitUsage = 3;
constexpr int kExitFetch = 4;

Range parse_range(const std::string& text) {
    Range r;
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            r.lo = r.hi = std::stol(text);
        } else {
            r.lo = std::stol(text.substr(0, pos));
            r.hi = std::stol(text.substr(pos + 2));
        }
    } catch (const std::exception&) {
        throw param_error("bad range '" + text + "' (expected A or A..B)");
    }
    if (r.lo > r.hi) throw param_error("empty range '" + text + "'");
    return r;
}

void load_config_file(RunConfig& cfg, const std::string& path, bool explicit_path) {
    std::ifstream in(path);
    if (!in) {
        if (explicit_path) throw param_error("config file not found: " + path);
        return;
    }
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos || line[start] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw param_error("config parse error at line " + std::to_string(lineno));
        std::string key = line.substr(start, eq - start);
        std::string val = line.substr(eq + 1);
        auto trim = [](std::string s) {
            size_t a = s.find_first_not_of(" \t\r");
            size_t b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        key = trim(key);
        val = trim(val);
        if (key == "prec_start") cfg.prec_start = std::stol(val);
        else if (key == "prec_cap") cfg.prec_cap = std::stol(val);
        else if (key == "jobs") cfg.jobs = std::stoi(val);
        else if (key == "cache_dir") cfg.cache_dir = val;
        else if (key == "offline") cfg.offline = (val == "1" || val == "true");
        else if (key == "format") cfg.format = val;
        else if (key == "exact_max_dim") cfg.exact_budget.max_dim = std::stoul(val);
        else if (key == "exact_max_work") cfg.exact_budget.max_work = std::stoul(val);
        else throw param_error("unknown config key '" + key + "'");
    }
    if (cfg.prec_start < 32 || cfg.prec_cap < cfg.prec_start)
        throw param_error("config: need prec_cap >= prec_start >= 32");
}

ordered_json maybe_canonical(const ordered_json& j, bool canonical) {
    return canonical ? store::canonicalize(j) : j;
}

void print_json_line(const ordered_json& j) { std::cout << j.dump() << "\n"; }

void print_record_line(const harness::VerificationRecord& r) {
    std::cout << r.id << "  verdict=" << recognize::verdict_name(r.verdict);
    if (!r.predicted.empty()) std::cout << "  predicted=" << r.predicted;
    if (r.observed_sign != 0) std::cout << "  sign=" << (r.observed_sign > 0 ? "+" : "-");
    if (r.recognized) std::cout << "  value=" << r.recognized->get_str();
    if (!r.certificate.empty()) std::cout << "  certificate=" << r.certificate;
    if (!r.mid_dec.empty()) std::cout << "  mid=" << r.mid_dec;
    if (!r.note.empty()) std::cout << "  note=" << r.note;
    std::cout << "\n";
}

void print_scan_line(const harness::ScanRow& r) {
    std::cout << r.id << "  verdict=" << r.verdict << "  divisor=" << r.divisor_repr;
    if (r.quotient) std::cout << "  quotient=" << r.quotient->get_str();
    if (!r.mid_dec.empty()) std::cout << "  mid=" << r.mid_dec;
    if (!r.note.empty()) std::cout << "  note=" << r.note;
    std::cout << "\n";
}

int verdict_exit(bool any_refuted, bool any_undecided) {
    if (any_refuted) return kExitRefuted;
    if (any_undecided) return kExitUndecided;
    return kExitOk;
}

struct ComputeArgs {
    std::string family;
    long p = 0, n = 0, m = 0, a = 1, b = 1;
    int delta = 0;
    bool doubled = false;
    long prec = 0;
    bool json = false;
    bool canonical = false;
    bool no_store = false;
};

detcore::MatrixSpec spec_from_args(const ComputeArgs& args) {
    const std::string& f = args.family;
    long p = args.p != 0 ? args.p : args.n;
    if (f == "tan-quad") return detcore::TanQuad{p, args.a, args.b, args.delta};
    if (f == "tan-lin") return detcore::TanLin{args.n, args.a, args.b, args.delta};
    if (f == "cot-quad") return detcore::CotQuad{p, args.a, args.b};
    if (f == "cot-jk") return detcore::CotJK{p};
    if (f == "tan-jk") return detcore::TanJK{args.m != 0 ? args.m : p};
    if (f == "tan2-quad") return detcore::Tan2Quad{p, args.a, args.b, args.delta};
    if (f == "tan2-linsum") return detcore::Tan2LinSum{args.n};
    if (f == "cot2-quad") return detcore::Cot2Quad{p, args.a, args.b};
    if (f == "leg-tan-quad") return detcore::LegTanQuad{p, args.a, args.b};
    if (f == "leg-cot-quad") return detcore::LegCotQuad{p, args.a, args.b};
    if (f == "cos-jk") return detcore::CosJK{args.n, args.delta, args.doubled};
    if (f == "sin-jk") return detcore::SinJK{args.n, args.doubled};
    throw param_error("unknown family '" + f + "'");
}

int cmd_compute(const ComputeArgs& args, RunConfig cfg) {
    if (args.prec != 0) {
        cfg.prec_start = args.prec;
        cfg.prec_cap = args.prec;  // a fixed precision makes the output reproducible
    }
    detcore::MatrixSpec spec = spec_from_args(args);
    std::string key = detcore::family_name(spec);
    for (const auto& [k, v] : detcore::family_params(spec))
        key += "|" + k + "=" + std::to_string(v);
    key += "|ball|" + std::to_string(cfg.prec_start);

    store::ResultStore db((fs::path(cfg.cache_dir) / "store.jsonl").string());
    if (auto hit = db.lookup(key)) {
        if (args.json) print_json_line(maybe_canonical(*hit, args.canonical));
        else std::cout << "(cached) " << hit->dump() << "\n";
        std::string verdict = (*hit)["verdict"].get<std::string>();
        return verdict == "Undecided" ? kExitUndecided : kExitOk;
    }

    harness::VerificationRecord rec;
    rec.family = detcore::family_name(spec);
    rec.params = detcore::family_params(spec);
    rec.id = key;
    long t0 = 0;
    harness::DetOutcome d = harness::compute_det(spec, cfg, false);
    (void)t0;
    if (!d.undecided) {
        rec.mid_dec = d.enclosure.mid_decimal();
        rec.rad_dec = d.enclosure.rad_decimal();
        rec.prec_bits = d.prec;
    }
    rec.engine = d.engine;
    std::optional<recognize::ClosedForm> form;
    long invp = args.p != 0 ? args.p : 0;
    if (std::holds_alternative<detcore::TanQuad>(spec) ||
        std::holds_alternative<detcore::CotQuad>(spec) ||
        std::holds_alternative<detcore::TanLin>(spec) ||
        std::holds_alternative<detcore::LegTanQuad>(spec)) {
        quadfield::QuadInvariants inv;
        if (invp != 0 && ntheory::is_probable_prime(invp))
            inv = quadfield::invariants_for(invp);
        form = recognize::predict(spec, inv);
    }
    if (form) {
        rec.predicted = recognize::form_repr(*form);
        if (recognize::form_is_zero(*form)) {
            if (auto cert = recognize::structural_zero(detcore::build(spec))) {
                rec.certificate = recognize::zero_kind_name(cert->kind);
                rec.verdict = recognize::VerdictKind::confirmed;
                rec.engine = d.undecided ? "structural" : rec.engine + "+structural";
            } else if (!d.undecided) {
                rec.verdict = recognize::match_ball(d.enclosure, *form, cfg.prec_cap).kind;
            }
        } else if (!d.undecided) {
            recognize::Verdict v = recognize::match_ball(d.enclosure, *form, cfg.prec_cap);
            rec.verdict = v.kind;
            rec.observed_sign = v.observed_sign;
        }
    } else if (!d.undecided) {
        rec.verdict = recognize::VerdictKind::confirmed;  // plain evaluation
        rec.note = "no covered closed form; enclosure reported";
    }
    ordered_json payload = harness::to_json(rec);
    if (!args.no_store) db.append(key, payload);
    if (args.json) print_json_line(maybe_canonical(payload, args.canonical));
    else print_record_line(rec);
    if (rec.verdict == recognize::VerdictKind::refuted) return kExitRefuted;
    if (rec.verdict == recognize::VerdictKind::undecided) return kExitUndecided;
    return kExitOk;
}

int cmd_verify(const std::string& theorem, const std::string& p_range,
               const std::string& n_range, bool products, const std::string& a_opt,
               bool json, bool canonical, const RunConfig& cfg) {
    bool any_refuted = false, any_undecided = false;
    auto consume = [&](const std::vector<harness::VerificationRecord>& recs) {
        for (const auto& r : recs) {
            if (json) print_json_line(maybe_canonical(harness::to_json(r), canonical));
            else print_record_line(r);
            if (r.verdict == recognize::VerdictKind::refuted) any_refuted = true;
            if (r.verdict == recognize::VerdictKind::undecided) any_undecided = true;
        }
    };
    if (products) {
        Range pr = parse_range(p_range.empty() ? "3..23" : p_range);
        for (long p = pr.lo; p <= pr.hi; ++p) {
            if (!ntheory::is_probable_prime(p) || p % 2 == 0) continue;
            std::vector<long> as{1, harness::least_nonresidue(p)};
            if (!a_opt.empty()) as = {std::stol(a_opt)};
            for (long a : as)
                consume(harness::verify_products(p, a, std::nullopt, 128));
        }
        return verdict_exit(any_refuted, any_undecided);
    }
    if (theorem != "1.1" && theorem != "1.2" && theorem != "1.3" && theorem != "1.4")
        throw param_error("unknown theorem id '" + theorem + "'");
    Range r = parse_range(theorem == "1.2" ? (n_range.empty() ? "3..15" : n_range)
                                           : (p_range.empty() ? "5..23" : p_range));
    consume(harness::verify_theorem(theorem, r, cfg));
    if (theorem == "1.1" && r.lo <= 3 && 3 <= r.hi) {
        std::cout << "# p=3 excluded from the sweep; raw anomaly records follow\n";
        consume(harness::theorem11_p3_anomaly(cfg));
        // the anomaly records do not gate the exit code
        any_refuted = false;
    }
    return verdict_exit(any_refuted, any_undecided);
}

int cmd_scan(const std::string& conjecture, const std::string& p_range,
             const std::string& n_range, bool json, bool canonical, const RunConfig& cfg) {
    std::string rng = !p_range.empty() ? p_range : n_range;
    if (rng.empty()) throw param_error("scan: need --p or --n range");
    auto rows = harness::scan_conjecture(conjecture, parse_range(rng), cfg);
    bool any_refuted = false, any_undecided = false;
    for (const auto& r : rows) {
        if (json) print_json_line(maybe_canonical(harness::to_json(r), canonical));
        else print_scan_line(r);
        if (r.verdict == "Refuted") any_refuted = true;
        if (r.verdict == "Undecided") any_undecided = true;
    }
    return verdict_exit(any_refuted, any_undecided);
}

int cmd_seq(const std::string& which, const std::string& n_range, bool json, bool canonical,
            const RunConfig& cfg) {
    if (which != "s") throw param_error("seq: only the sequence 's' is available");
    Range r = parse_range(n_range.empty() ? "1..11" : n_range);
    auto recs = harness::sequence_s(r.hi, cfg);
    bool any_undecided = false;
    std::string csv;
    for (const auto& rec : recs) {
        if (rec.n < r.lo) continue;
        if (json) print_json_line(maybe_canonical(harness::to_json(rec), canonical));
        else
            std::cout << "s_" << rec.n << " = " << rec.value.get_str()
                      << (rec.certified ? "" : "  (uncertified)") << "  [" << rec.source << "]\n";
        if (!rec.certified) any_undecided = true;
        if (!csv.empty()) csv += ", ";
        csv += rec.value.get_str();
    }
    if (!json) std::cout << "s = " << csv << "\n";
    return any_undecided ? kExitUndecided : kExitOk;
}

int cmd_oeis(const std::string& action, const std::string& id, const std::string& n_range,
             bool json, const RunConfig& cfg) {
    if (action == "fetch") {
        auto terms = oeis::fetch(id, cfg.cache_dir, cfg.offline);
        for (const auto& [n, v] : terms) std::cout << n << " " << v.get_str() << "\n";
        return kExitOk;
    }
    if (action == "compare") {
        Range r = parse_range(n_range.empty() ? "1..11" : n_range);
        auto seq = harness::sequence_s(r.hi, cfg);
        seq.erase(std::remove_if(seq.begin(), seq.end(),
                                 [&](const auto& s) { return s.n < r.lo; }),
                  seq.end());
        auto terms = oeis::fetch(id, cfg.cache_dir, cfg.offline);
        auto report = harness::compare_oeis(seq, terms, id);
        if (json) {
            print_json_line(harness::to_json(report));
        } else {
            for (const auto& row : report.rows)
                std::cout << "n=" << row.n << "  s_n=" << row.computed.get_str()
                          << "  t_n=" << (row.reference ? row.reference->get_str() : "?")
                          << "  relation=" << row.relation << "  " << row.status << "\n";
            std::cout << "mismatches=" << report.mismatches << " gaps=" << report.gaps << "\n";
        }
        return report.mismatches > 0 ? kExitRefuted : kExitOk;
    }
    throw param_error("oeis: unknown action '" + action + "' (use fetch or compare)");
}

int cmd_report(const std::string& input, const std::string& format, bool canonical) {
    std::ifstream in(input);
    if (!in) throw param_error("report: cannot open " + input);
    std::vector<ordered_json> payloads;
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        ordered_json j = ordered_json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw param_error("report: malformed JSON at line " + std::to_string(lineno));
        ordered_json payload = j.contains("payload") ? j["payload"] : j;
        payloads.push_back(canonical ? store::canonicalize(payload) : payload);
    }
    auto field = [](const ordered_json& p, const std::string& key) -> std::string {
        if (!p.contains(key)) return "";
        const auto& v = p[key];
        if (v.is_string()) return v.get<std::string>();
        return v.dump();
    };
    std::vector<std::string> cols{"id", "family", "verdict", "predicted", "quotient",
                                  "enclosure", "runtime_ms"};
    auto cell = [&](const ordered_json& p, const std::string& c) -> std::string {
        if (c == "enclosure" && p.contains("enclosure"))
            return field(p["enclosure"], "mid_dec");
        return field(p, c);
    };
    if (format == "csv") {
        for (size_t i = 0; i < cols.size(); ++i)
            std::cout << cols[i] << (i + 1 < cols.size() ? "," : "\n");
        for (const auto& p : payloads) {
            for (size_t i = 0; i < cols.size(); ++i) {
                std::string v = cell(p, cols[i]);
                for (auto& ch : v)
                    if (ch == ',') ch = ';';
                std::cout << v << (i + 1 < cols.size() ? "," : "\n");
            }
        }
    } else if (format == "md") {
        std::cout << "|";
        for (const auto& c : cols) std::cout << " " << c << " |";
        std::cout << "\n|";
        for (size_t i = 0; i < cols.size(); ++i) std::cout << " --- |";
        std::cout << "\n";
        for (const auto& p : payloads) {
            std::cout << "|";
            for (const auto& c : cols) std::cout << " " << cell(p, c) << " |";
            std::cout << "\n";
        }
    } else if (format == "json") {
        for (const auto& p : payloads) print_json_line(p);
    } else {
        throw param_error("report: unknown format '" + format + "'");
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified trigonometric determinant toolkit"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path;
    bool config_explicit = false;
    std::string cache_dir_flag;
    long prec_start_flag = 0, prec_cap_flag = 0;
    int jobs_flag = 0;
    bool offline_flag = false;

    app.add_option("--config", config_path, "flat key=value config file");
    app.add_option("--cache-dir", cache_dir_flag, "cache/store directory");
    app.add_option("--prec-start", prec_start_flag, "starting precision in bits");
    app.add_option("--prec-cap", prec_cap_flag, "precision ladder cap in bits");
    app.add_option("--jobs", jobs_flag, "parallel jobs for sweeps");
    app.add_flag("--offline", offline_flag, "never touch the network");

    // compute
    ComputeArgs cargs;
    auto* compute = app.add_subcommand("compute", "evaluate one determinant instance");
    compute->add_option("--family", cargs.family, "family name")->required();
    compute->add_option("--p", cargs.p, "prime modulus");
    compute->add_option("--n", cargs.n, "modulus / size parameter");
    compute->add_option("--m", cargs.m, "odd modulus (tan-jk)");
    compute->add_option("--a", cargs.a, "coefficient a");
    compute->add_option("--b", cargs.b, "coefficient b");
    compute->add_option("--delta", cargs.delta, "index start (0 or 1)");
    compute->add_flag("--doubled", cargs.doubled, "doubled-angle variant (cos-jk/sin-jk)");
    compute->add_option("--prec", cargs.prec, "fixed precision in bits");
    compute->add_flag("--json", cargs.json, "JSON line output");
    compute->add_flag("--canonical", cargs.canonical, "zero volatile fields in JSON output");
    compute->add_flag("--no-store", cargs.no_store, "skip the result store");

    // verify
    std::string v_theorem, v_prange, v_nrange, v_a;
    bool v_products = false, v_json = false, v_canonical = false;
    auto* verify = app.add_subcommand("verify", "verify a closed-form suite");
    verify->add_option("--theorem", v_theorem, "theorem id: 1.1, 1.2, 1.3 or 1.4");
    verify->add_option("--p", v_prange, "prime range A..B");
    verify->add_option("--n", v_nrange, "modulus range A..B");
    verify->add_option("--a", v_a, "fix coefficient a (products only)");
    verify->add_flag("--products", v_products, "check the root-of-unity product identities");
    verify->add_flag("--json", v_json, "JSON line output");
    verify->add_flag("--canonical", v_canonical, "zero volatile fields in JSON output");

    // scan
    std::string s_conj, s_prange, s_nrange;
    bool s_json = false, s_canonical = false;
    auto* scan = app.add_subcommand("scan", "scan a conjecture for certified divisibility");
    scan->add_option("--conjecture", s_conj, "5.1, 5.2i, 5.2ii, 5.3, 5.3diff, 5.4, 5.5, 5.6")
        ->required();
    scan->add_option("--p", s_prange, "prime range A..B");
    scan->add_option("--n", s_nrange, "index range A..B");
    scan->add_flag("--json", s_json, "JSON line output");
    scan->add_flag("--canonical", s_canonical, "zero volatile fields in JSON output");

    // seq
    std::string q_which = "s", q_nrange;
    bool q_json = false, q_canonical = false;
    auto* seq = app.add_subcommand("seq", "certified integer sequence values");
    seq->add_option("which", q_which, "sequence name (s)");
    seq->add_option("--n", q_nrange, "index range A..B");
    seq->add_flag("--json", q_json, "JSON line output");
    seq->add_flag("--canonical", q_canonical, "zero volatile fields in JSON output");

    // oeis
    std::string o_action, o_id = "A277445", o_nrange;
    bool o_json = false;
    auto* oeis_cmd = app.add_subcommand("oeis", "fetch or compare an OEIS b-file");
    oeis_cmd->add_option("action", o_action, "fetch or compare")->required();
    oeis_cmd->add_option("--id", o_id, "A-number (default A277445)");
    oeis_cmd->add_option("--n", o_nrange, "index range for compare");
    oeis_cmd->add_flag("--json", o_json, "JSON output");

    // report
    std::string r_input, r_format = "md";
    bool r_canonical = false;
    auto* report = app.add_subcommand("report", "render stored records");
    report->add_option("--input", r_input, "store.jsonl path")->required();
    report->add_option("--format", r_format, "csv | md | json");
    report->add_flag("--canonical", r_canonical, "strip volatile fields");

    try {
        app.parse(argc, argv);

        // precedence: config file, then environment, then flags
        load_config_file(cfg, config_path.empty() ? "tandet.conf" : config_path,
                         !config_path.empty());
        if (const char* env = std::getenv("TANDET_CACHE_DIR")) cfg.cache_dir = env;
        if (!cache_dir_flag.empty()) cfg.cache_dir = cache_dir_flag;
        if (prec_start_flag != 0) cfg.prec_start = prec_start_flag;
        if (prec_cap_flag != 0) cfg.prec_cap = prec_cap_flag;
        if (jobs_flag != 0) cfg.jobs = jobs_flag;
        if (offline_flag) cfg.offline = true;
        if (cfg.prec_start < 32 || cfg.prec_cap < cfg.prec_start)
            throw param_error("need prec_cap >= prec_start >= 32");
        if (cfg.jobs < 1) throw param_error("jobs must be >= 1");

        if (compute->parsed()) return cmd_compute(cargs, cfg);
        if (verify->parsed())
            return cmd_verify(v_theorem, v_prange, v_nrange, v_products, v_a, v_json,
                              v_canonical, cfg);
        if (scan->parsed()) return cmd_scan(s_conj, s_prange, s_nrange, s_json, s_canonical, cfg);
        if (seq->parsed()) return cmd_seq(q_which, q_nrange, q_json, q_canonical, cfg);
        if (oeis_cmd->parsed()) return cmd_oeis(o_action, o_id, o_nrange, o_json, cfg);
        if (report->parsed()) return cmd_report(r_input, r_format, r_canonical);
        throw param_error("no subcommand");
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    } catch (const oeis::fetch_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFetch;
    } catch (const undecided_error& e) {
        std::cerr << "undecided: " << e.what() << "\n";
        return kExitUndecided;
    } catch (const param_error& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
