#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>

#include "bfcert/bf_decoder.hpp"
#include "bfcert/builtin_codes.hpp"
#include "bfcert/dfr_bounds.hpp"
#include "bfcert/errors.hpp"
#include "bfcert/keysearch.hpp"
#include "bfcert/montecarlo.hpp"
#include "bfcert/subset_count.hpp"
#include "bfcert/version.hpp"

using namespace bfcert;

namespace {

enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInvalidInput = 2,
    kGuardRefused = 3,
    kNoKeyFound = 4,
};

struct TRange {
    uint64_t lo = 0, hi = 0;
};

TRange parse_t_range(const std::string& text) {
    TRange r;
    auto pos = text.find("..");
    try {
        if (pos == std::string::npos) {
            r.lo = r.hi = std::stoull(text);
        } else {
            r.lo = std::stoull(text.substr(0, pos));
            r.hi = std::stoull(text.substr(pos + 2));
        }
    } catch (const std::exception&) {
        throw ConfigError("cannot parse t range '" + text + "' (expected N or A..B)");
    }
    if (r.hi < r.lo) throw ConfigError("empty t range '" + text + "'");
    return r;
}

// every emitted file starts with the resolved configuration
class Output {
  public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path);
            if (!file_) throw ConfigError("cannot open output file: " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void meta(const std::string& key, const std::string& value) {
        os() << "# " << key << ": " << value << "\n";
    }
    void header() { meta("tool", std::string("bf-cert ") + kVersion); }

  private:
    std::ofstream file_;
};

std::string fingerprint_hex(const ParityCheckMatrix& H) {
    char buf[32];
    snprintf(buf, sizeof buf, "0x%016llx", (unsigned long long)H.fingerprint());
    return buf;
}

std::string describe_code(const ParityCheckMatrix& H) {
    std::ostringstream ss;
    ss << "n=" << H.n << " r=" << H.r;
    if (H.structure != CodeStructure::Explicit) ss << " p=" << H.p << " v=" << H.v;
    ss << " fingerprint=" << fingerprint_hex(H);
    return ss.str();
}

Support parse_error_positions(const std::string& text, uint32_t n) {
    Support out;
    std::string body = text;
    if (!body.empty() && body[0] == '@') {
        std::ifstream in(body.substr(1));
        if (!in) throw ConfigError("cannot open error file: " + body.substr(1));
        std::ostringstream ss;
        ss << in.rdbuf();
        body = ss.str();
    }
    if (body.rfind("0x", 0) == 0 || body.rfind("0X", 0) == 0) {
        // hex digits left to right, high bit of each digit first, positions ascend
        uint32_t pos = 0;
        for (size_t k = 2; k < body.size(); ++k) {
            char c = body[k];
            int val = (c >= '0' && c <= '9')   ? c - '0'
                      : (c >= 'a' && c <= 'f') ? c - 'a' + 10
                      : (c >= 'A' && c <= 'F') ? c - 'A' + 10
                                               : -1;
            if (val < 0) throw ConfigError("bad hex digit in error vector");
            for (int bit = 3; bit >= 0; --bit, ++pos) {
                if (!((val >> bit) & 1)) continue;
                if (pos >= n) throw DimensionError("error vector longer than n");
                out.push_back(pos);
            }
        }
    } else {
        std::string token;
        std::istringstream ss(body);
        while (std::getline(ss, token, ',')) {
            std::istringstream ws(token);
            std::string piece;
            while (ws >> piece) {
                uint64_t idx = std::stoull(piece);
                if (idx >= n) throw DimensionError("error index " + piece + " out of range");
                out.push_back((uint32_t)idx);
            }
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::string log2_str(double x) {
    if (x == -std::numeric_limits<double>::infinity()) return "-inf";
    std::ostringstream ss;
    ss.precision(6);
    ss << std::fixed << x;
    return ss.str();
}

struct CommonOpts {
    unsigned workers = 0;
};

int cmd_code_info(const std::string& spec, int cutoff, Output& out) {
    auto H = resolve_code_spec(spec);
    out.header();
    out.meta("command", "code info");
    out.meta("spec", spec);
    auto& os = out.os();
    const char* type = H.structure == CodeStructure::QC2        ? "qc2"
                       : H.structure == CodeStructure::Monomial ? "monomial"
                                                                : "explicit";
    os << "type: " << type << "\n";
    os << "n: " << H.n << "\nr: " << H.r << "\n";
    if (H.structure != CodeStructure::Explicit) os << "p: " << H.p << "\n";
    os << "min_col_weight: " << H.min_col_weight() << "\n";
    os << "max_row_weight: " << H.max_row_weight() << "\n";
    os << "design_rate: " << H.design_rate() << "\n";
    os << "fingerprint: " << fingerprint_hex(H) << "\n";
    auto g = girth(H, cutoff);
    os << "girth: " << (g.exact ? std::to_string(g.value) : ">=" + std::to_string(g.value))
       << "\n";

    auto profiles = distinct_row_profiles(H);
    auto cap = analyze_capability(profiles, H.min_col_weight(), H.n);
    os << "delta: " << cap.delta << "\n";
    os << "t_majority: " << cap.t_majority
       << (cap.t_majority_capped ? " (capped: disjoint columns)" : "") << "\n";
    os << "t_mu: " << cap.t_mu << "\n";
    for (uint64_t t = 1; t <= cap.t_mu; ++t)
        os << "  t=" << t << " thresholds b in [" << cap.threshold_ranges[t - 1].first << ", "
           << cap.threshold_ranges[t - 1].second << "]\n";
    return kOk;
}

int cmd_code_build(const std::string& spec, Output& out) {
    auto H = resolve_code_spec(spec);
    out.os() << code_spec_json(H);
    std::cerr << "bf-cert: built " << describe_code(H) << "\n";
    return kOk;
}

int cmd_decode(const std::string& spec, const std::string& error_text, uint32_t b,
               const std::string& b_file, uint32_t iters, Output& out) {
    auto H = resolve_code_spec(spec);
    BfConfig cfg;
    cfg.max_iterations = iters;
    if (!b_file.empty()) {
        std::ifstream in(b_file);
        if (!in) throw ConfigError("cannot open threshold file: " + b_file);
        uint32_t x;
        while (in >> x) cfg.thresholds.push_back(x);
    } else {
        cfg.thresholds = {b};
    }
    auto support = parse_error_positions(error_text, H.n);
    BitVec e(H.n, 0);
    for (uint32_t i : support) e[i] = 1;
    auto s = syndrome(H, e);
    auto outcome = bf_decode(H, s, cfg);

    out.header();
    out.meta("command", "decode");
    out.meta("spec", spec);
    out.meta("code", describe_code(H));
    auto& os = out.os();
    os << "error_weight: " << support.size() << "\n";
    os << "iterations_run: " << outcome.iterations_run << "\n";
    os << "syndrome_zero: " << (outcome.syndrome_zero ? "true" : "false") << "\n";
    os << "flips:";
    for (uint32_t i = 0; i < H.n; ++i)
        if (outcome.e_prime[i]) os << ' ' << i;
    os << "\n";
    auto f = decision_flags(e, outcome.e_prime);
    uint32_t residual = 0;
    for (uint8_t bit : f) residual += bit;
    os << "residual_error_weight: " << residual << "\n";
    os << "decoded_exactly: " << (residual == 0 ? "true" : "false") << "\n";
    return kOk;
}

int cmd_count(const std::string& vec_file, uint64_t m, int64_t alpha, bool brute, Output& out) {
    std::ifstream in(vec_file);
    if (!in) throw ConfigError("cannot open vector file: " + vec_file);
    std::vector<int64_t> values;
    int64_t x;
    while (in >> x) values.push_back(x);

    out.header();
    out.meta("command", "count");
    out.meta("l", std::to_string(values.size()));
    out.meta("m", std::to_string(m));
    out.meta("alpha", std::to_string(alpha));
    BigInt result = brute ? count_exceeding_bruteforce(values, m, alpha)
                          : count_exceeding(compress(values), m, alpha);
    out.os() << result.get_str() << "\n";
    return kOk;
}

BoundReport bound_with_method(const ParityCheckMatrix& H, const std::vector<RowProfile>& profiles,
                              uint64_t t, uint32_t b, const std::string& method,
                              unsigned workers) {
    if (method == "th4" || (method == "auto" && H.structure != CodeStructure::QC2))
        return dfr_bound(profiles, H.n, t, b, workers);
    if (method == "qc" || method == "auto") return dfr_bound_qc(H, t, b);
    const uint32_t v = H.min_col_weight();
    if (method == "th4bis") return dfr_bound_regular_odd(profiles, H.n, v, t);
    if (method == "th5") {
        if (girth(H, 6).value == 4) throw ConfigError("th5 requires girth >= 6");
        return dfr_bound_girth6_regular(H.n, v, H.max_row_weight(), t);
    }
    throw ConfigError("unknown bound method: " + method);
}

int cmd_bound(const std::string& spec, const std::string& t_text, std::optional<uint32_t> b,
              bool optimize, const std::string& method, const CommonOpts& common, Output& out) {
    auto H = resolve_code_spec(spec);
    auto range = parse_t_range(t_text);
    auto profiles = distinct_row_profiles(H);

    out.header();
    out.meta("command", "bound");
    out.meta("spec", spec);
    out.meta("code", describe_code(H));
    out.meta("method", method);
    out.meta("threshold", optimize ? "optimize" : std::to_string(*b));
    auto& os = out.os();
    os << "t,b,numerator_bits,log2_bound,method\n";
    for (uint64_t t = range.lo; t <= range.hi; ++t) {
        BoundReport rep;
        uint32_t b_used;
        if (optimize) {
            auto [bb, r] = optimize_threshold(profiles, H.n, H.min_col_weight(), t);
            b_used = bb;
            rep = std::move(r);
        } else {
            b_used = *b;
            rep = bound_with_method(H, profiles, t, b_used, method, common.workers);
        }
        size_t bits = rep.numerator == 0 ? 0 : mpz_sizeinbase(rep.numerator.get_mpz_t(), 2);
        os << t << ',' << b_used << ',' << bits << ',' << log2_str(rep.log2_bound) << ','
           << bound_method_name(rep.method) << "\n";
    }
    return kOk;
}

int cmd_simulate(const std::string& spec, const std::string& t_text, uint32_t b,
                 uint64_t stop_failures, uint64_t max_trials, uint64_t seed,
                 const CommonOpts& common, Output& out) {
    auto H = resolve_code_spec(spec);
    auto range = parse_t_range(t_text);
    BfConfig cfg = BfConfig::uniform(b);

    out.header();
    out.meta("command", "simulate");
    out.meta("spec", spec);
    out.meta("code", describe_code(H));
    out.meta("seed", std::to_string(seed));
    out.meta("stop_failures", std::to_string(stop_failures));
    out.meta("max_trials", std::to_string(max_trials));
    auto& os = out.os();
    os << "t,b,trials,failures,dfr,stderr\n";
    for (uint64_t t = range.lo; t <= range.hi; ++t) {
        TrialPlan plan{t, stop_failures, max_trials, seed, common.workers, 10000000};
        auto est = estimate_dfr(H, plan, cfg);
        os << t << ',' << b << ',' << est.trials << ',' << est.failures << ',' << est.p_hat << ','
           << est.std_err << "\n";
        std::cerr << "bf-cert: t=" << t << " trials=" << est.trials
                  << " failures=" << est.failures << (est.reached_stop ? "" : " (budget hit)")
                  << "\n";
    }
    return kOk;
}

int cmd_compare(const std::string& spec, const std::string& t_text, uint32_t b,
                uint64_t stop_failures, uint64_t max_trials, uint64_t seed,
                const CommonOpts& common, Output& out) {
    auto H = resolve_code_spec(spec);
    auto range = parse_t_range(t_text);
    auto profiles = distinct_row_profiles(H);
    BfConfig cfg = BfConfig::uniform(b);

    out.header();
    out.meta("command", "compare");
    out.meta("spec", spec);
    out.meta("code", describe_code(H));
    out.meta("b", std::to_string(b));
    out.meta("seed", std::to_string(seed));
    auto& os = out.os();
    os << "t,bound_log2,dfr_hat,stderr,method\n";
    for (uint64_t t = range.lo; t <= range.hi; ++t) {
        BoundReport rep = H.structure == CodeStructure::QC2
                              ? dfr_bound_qc(H, t, b)
                              : dfr_bound(profiles, H.n, t, b, common.workers);
        TrialPlan plan{t, stop_failures, max_trials, seed, common.workers, 10000000};
        auto est = estimate_dfr(H, plan, cfg);
        os << t << ',' << log2_str(rep.log2_bound) << ',' << est.p_hat << ',' << est.std_err
           << ',' << bound_method_name(rep.method) << "\n";
    }
    return kOk;
}

int cmd_keygen(uint32_t p, uint32_t v, uint64_t t, int32_t target, std::optional<uint32_t> fixed_b,
               uint64_t keys, uint64_t max_attempts, uint64_t seed, const CommonOpts& common,
               Output& out) {
    KeygenPolicy policy;
    policy.p = p;
    policy.v = v;
    policy.t = t;
    policy.target_log2_dfr = target;
    policy.max_attempts = max_attempts;
    policy.seed = seed;
    policy.fixed_b = fixed_b;
    policy.workers = common.workers;
    std::cerr << "bf-cert: keygen p=" << p << " v=" << v << " t=" << t << " target-log2=" << target
              << " b=" << (fixed_b ? std::to_string(*fixed_b) : "optimize") << " seed=" << seed
              << "\n";

    std::vector<KeyRecord> records;
    bool found_any = false;
    if (keys > 0) {
        auto exp = acceptance_rate_experiment(policy, keys);
        records = std::move(exp.records);
        found_any = exp.accepted > 0;
        std::cerr << "bf-cert: accepted " << exp.accepted << " of " << exp.keys_tested << " keys\n";
    } else {
        auto key = rejection_sample_key(policy);
        if (key) {
            records.push_back(std::move(*key));
            found_any = true;
        }
    }

    auto& os = out.os();
    os << "[\n";
    for (size_t k = 0; k < records.size(); ++k) {
        const auto& rec = records[k];
        os << "  {\"attempt\": " << rec.attempt
           << ", \"accepted\": " << (rec.accepted ? "true" : "false") << ", \"b\": " << rec.b
           << ", \"log2_bound\": \"" << log2_str(rec.log2_bound) << "\", \"numerator\": \""
           << rec.numerator.get_str() << "\", \"seed\": " << rec.seed
           << ", \"duplicate_columns\": " << (rec.duplicate_columns ? "true" : "false")
           << ",\n   \"s0\": [";
        for (size_t i = 0; i < rec.s0.size(); ++i) os << (i ? "," : "") << rec.s0[i];
        os << "], \"s1\": [";
        for (size_t i = 0; i < rec.s1.size(); ++i) os << (i ? "," : "") << rec.s1[i];
        os << "]}" << (k + 1 < records.size() ? "," : "") << "\n";
    }
    os << "]\n";

    if (!found_any) {
        std::cerr << "bf-cert: no key satisfied the target within the attempt budget\n";
        return kNoKeyFound;
    }
    return kOk;
}

int cmd_table1(uint32_t v_max, Output& out) {
    out.header();
    out.meta("command", "table1");
    out.meta("note", "g=4 row lists floor(v/4), the delta = 2 case of floor(v/(2 delta))");
    auto& os = out.os();
    std::ostringstream summary;
    os << "g,v,t_ours,t_benchmark,improved\n";
    for (uint32_t g : {4u, 6u, 8u, 10u}) {
        std::vector<uint32_t> improved;
        for (uint32_t v = 1; v <= v_max; ++v) {
            uint64_t ours = g == 4 ? v / 4 : v / 2;
            uint64_t other = chilappagari_bound(v, g);
            if (ours > other) improved.push_back(v);
            os << g << ',' << v << ',' << ours << ',' << other << ',' << (ours > other ? 1 : 0)
               << "\n";
        }
        summary.str("");
        for (size_t i = 0; i < improved.size() && i < 12; ++i)
            summary << (i ? " " : "") << improved[i];
        if (improved.size() > 12) summary << " ...";
        out.meta("improvement g=" + std::to_string(g), summary.str());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"bf-cert: bit-flipping decoder failure-rate certification"};
    app.require_subcommand(1);

    CommonOpts common;
    app.add_option("--workers", common.workers, "worker threads (0 = hardware)")
        ->envname("BF_CERT_WORKERS");

    std::string spec, t_text, outpath, error_text, b_file, method = "auto", vec_file;
    uint32_t b = 0, iters = 1, cutoff = 8, v_max = 100, p = 0, v = 0;
    uint64_t m = 0, stop_failures = 100, max_trials = 1000000000ull, seed = 1, keys = 0,
             max_attempts = 1000, t_single = 0;
    int64_t alpha = 0;
    int32_t target = -80;
    bool optimize = false, brute = false;

    auto* code = app.add_subcommand("code", "build or inspect a code spec");
    code->fallthrough();
    code->require_subcommand(1);
    auto* code_build = code->add_subcommand("build", "validate a spec and emit normalized JSON");
    code_build->fallthrough();
    code_build->add_option("--spec", spec)->required();
    code_build->add_option("--out", outpath);
    auto* code_info = code->add_subcommand("info", "print dimensions, girth and capability");
    code_info->fallthrough();
    code_info->add_option("--spec", spec)->required();
    code_info->add_option("--girth-cutoff", cutoff);
    code_info->add_option("--out", outpath);

    auto* decode = app.add_subcommand("decode", "run the bit-flipping decoder on one error");
    decode->fallthrough();
    decode->add_option("--spec", spec)->required();
    decode->add_option("--error", error_text, "indices 'a,b,c', '@file', or 0x hex")->required();
    decode->add_option("--b", b);
    decode->add_option("--b-file", b_file);
    decode->add_option("--iters", iters);
    decode->add_option("--out", outpath);

    auto* count = app.add_subcommand("count", "exact subset-sum threshold counting");
    count->fallthrough();
    count->add_option("--vector", vec_file)->required();
    count->add_option("--m", m)->required();
    count->add_option("--alpha", alpha)->required();
    count->add_flag("--brute", brute, "use the enumeration oracle (l <= 25)");
    count->add_option("--out", outpath);

    auto* bound = app.add_subcommand("bound", "certified failure-rate upper bounds");
    bound->fallthrough();
    bound->add_option("--spec", spec)->required();
    bound->add_option("--t", t_text)->required();
    bound->add_option("--b", b);
    bound->add_flag("--optimize", optimize);
    bound->add_option("--method", method)
        ->check(CLI::IsMember({"auto", "th4", "th4bis", "th5", "qc"}));
    bound->add_option("--out", outpath);

    auto* simulate = app.add_subcommand("simulate", "Monte Carlo failure-rate estimation");
    simulate->fallthrough();
    simulate->add_option("--spec", spec)->required();
    simulate->add_option("--t", t_text)->required();
    simulate->add_option("--b", b)->required();
    simulate->add_option("--stop-failures", stop_failures);
    simulate->add_option("--max-trials", max_trials);
    simulate->add_option("--seed", seed);
    simulate->add_option("--out", outpath);

    auto* compare = app.add_subcommand("compare", "bound and simulation side by side");
    compare->fallthrough();
    compare->add_option("--spec", spec)->required();
    compare->add_option("--t", t_text)->required();
    compare->add_option("--b", b)->required();
    compare->add_option("--stop-failures", stop_failures);
    compare->add_option("--max-trials", max_trials);
    compare->add_option("--seed", seed);
    compare->add_option("--out", outpath);

    auto* keygen = app.add_subcommand("keygen", "rejection sampling of certified QC2 keys");
    keygen->fallthrough();
    keygen->add_option("--p", p)->required();
    keygen->add_option("--v", v)->required();
    keygen->add_option("--t", t_single)->required();
    keygen->add_option("--target-log2", target)->required();
    auto* fixed_b_opt = keygen->add_option("--b", b, "fixed threshold (default: optimize)");
    keygen->add_option("--keys", keys, "certify exactly N draws instead of searching");
    keygen->add_option("--max-attempts", max_attempts);
    keygen->add_option("--seed", seed);
    keygen->add_option("--out", outpath);

    auto* table1 = app.add_subcommand("table1", "guaranteed-correction comparison table");
    table1->fallthrough();
    table1->add_option("--v-max", v_max);
    table1->add_option("--out", outpath);

    CLI11_PARSE(app, argc, argv);

    try {
        Output out(outpath);
        if (code_build->parsed()) return cmd_code_build(spec, out);
        if (code_info->parsed()) return cmd_code_info(spec, (int)cutoff, out);
        if (decode->parsed()) return cmd_decode(spec, error_text, b, b_file, iters, out);
        if (count->parsed()) return cmd_count(vec_file, m, alpha, brute, out);
        if (bound->parsed()) {
            if (!optimize && bound->count("--b") == 0)
                throw ConfigError("bound: need --b or --optimize");
            std::optional<uint32_t> bopt;
            if (bound->count("--b")) bopt = b;
            return cmd_bound(spec, t_text, bopt, optimize, method, common, out);
        }
        if (simulate->parsed())
            return cmd_simulate(spec, t_text, b, stop_failures, max_trials, seed, common, out);
        if (compare->parsed())
            return cmd_compare(spec, t_text, b, stop_failures, max_trials, seed, common, out);
        if (keygen->parsed()) {
            std::optional<uint32_t> fb;
            if (fixed_b_opt->count()) fb = b;
            return cmd_keygen(p, v, t_single, target, fb, keys, max_attempts, seed, common, out);
        }
        if (table1->parsed()) return cmd_table1(v_max, out);
        return kFailure;
    } catch (const GuardError& e) {
        std::cerr << "bf-cert: refused: " << e.what() << "\n";
        return kGuardRefused;
    } catch (const SpecError& e) {
        std::cerr << "bf-cert: invalid spec: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const ConfigError& e) {
        std::cerr << "bf-cert: invalid configuration: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const DomainError& e) {
        std::cerr << "bf-cert: invalid argument: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const DimensionError& e) {
        std::cerr << "bf-cert: dimension mismatch: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "bf-cert: error: " << e.what() << "\n";
        return kFailure;
    }
}
