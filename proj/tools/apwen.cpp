// apwen: prove or refute the Apwenian property of pattern-generated
// +-1 sequences, inspect the counting oracles, and search pattern space.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apwen/oracle.hpp"
#include "apwen/prover.hpp"
#include "apwen/recgen.hpp"
#include "apwen/report.hpp"

using namespace apwen;

namespace {

struct Options {
    std::string pattern;
    int jobs = 1;
    bool fast = false;
    uint64_t mod = 0;
    bool verbose = false;
    bool json = false;
    int max_brute = 12;
    int scan = 128;
    std::string resume;
};

/// Resumable per-unit results: one line per record,
/// "<key> <count> <hex-monomial>[,<hex-monomial>...]".
class CheckpointFile {
  public:
    explicit CheckpointFile(const std::string& path) : path_(path) {
        std::ifstream in(path_);
        std::string line;
        while (std::getline(in, line)) {
            std::istringstream ls(line);
            size_t key;
            recgen::detail::UnitResult r;
            std::string mons;
            if (!(ls >> key >> r.contributing >> mons)) continue;
            if (mons != "-") {
                std::istringstream ms(mons);
                std::string tok;
                while (std::getline(ms, tok, ','))
                    r.poly.toggle(Monomial(std::stoul(tok, nullptr, 16)));
            }
            saved_[key] = std::move(r);
        }
        ckpt_.lookup = [this](size_t key, recgen::detail::UnitResult& out) {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = saved_.find(key);
            if (it == saved_.end()) return false;
            out = it->second;
            return true;
        };
        ckpt_.store = [this](size_t key, const recgen::detail::UnitResult& r) {
            std::lock_guard<std::mutex> lk(mu_);
            std::ofstream out(path_, std::ios::app);
            out << key << ' ' << r.contributing << ' ';
            if (r.poly.monomials().empty()) {
                out << '-';
            } else {
                bool first = true;
                for (Monomial m : r.poly.monomials()) {
                    if (!first) out << ',';
                    first = false;
                    out << std::hex << unsigned(m) << std::dec;
                }
            }
            out << '\n';
            saved_[key] = r;
        };
    }

    const recgen::Checkpoint* get() const { return &ckpt_; }

  private:
    std::string path_;
    std::mutex mu_;
    std::map<size_t, recgen::detail::UnitResult> saved_;
    recgen::Checkpoint ckpt_;
};

RecurrenceSystem build_system(const Pattern& p, const Options& opt) {
    if (opt.fast) return recgen::fast_generate_system(p);
    if (!opt.resume.empty()) {
        CheckpointFile ck(opt.resume);
        return recgen::generate_system(p, opt.jobs, ck.get());
    }
    return recgen::generate_system(p, opt.jobs);
}

void print_type_listing(const Pattern& p, const recgen::RunConfig& run) {
    long index = 0;
    for (Kind kind : {Kind::PX, Kind::PY, Kind::PZ}) {
        for (int h = 0; h < p.d(); ++h) {
            int kmax = (kind == Kind::PX) ? p.d() : 1;
            for (int k = 0; k < kmax; ++k) {
                recgen::enumerate_types(run, kind, h, k, [&](const TypeWord& t) {
                    std::vector<std::string> parts;
                    bool zero = false;
                    for (int i = 0; i < p.d(); ++i) {
                        auto e = recgen::eta_case(run, kind, h, k, t.letters, i);
                        auto b = recgen::mu_bit(run, kind, h, k, t.letters, i);
                        if (!b) {
                            zero = true;
                            break;
                        }
                        int fam = *b % 6, shift = *b / 6;
                        parts.push_back("[" + SymVar{uint8_t(fam), uint8_t(shift)}.name() +
                                        ":" + e.text() + "]");
                    }
                    if (zero) return;
                    ++index;
                    std::ostringstream line;
                    line << ' ' << index << ' ' << t.text() << " (" << kind_name(kind)
                         << " h=" << h;
                    if (kind == Kind::PX) line << " k=" << k;
                    line << "):";
                    for (auto& s : parts) line << ' ' << s;
                    std::cout << line.str() << '\n';
                });
            }
        }
    }
}

int cmd_analyze(const Options& opt, bool recurrences_only) {
    Pattern p = Pattern::parse(opt.pattern);
    auto sys = build_system(p, opt);
    if (recurrences_only) {
        if (opt.json) {
            std::cout << report::system_json(sys).dump(2) << '\n';
        } else {
            std::cout << sys.text();
            if (opt.verbose) {
                std::cout << "\ncontributing types (X,Y,Z direction):\n";
                print_type_listing(p, recgen::main_run(p));
                if (sys.has_uvw) {
                    std::cout << "\ncontributing types (U,V,W direction):\n";
                    print_type_listing(p, recgen::swapped_run(p));
                }
            }
        }
        return 0;
    }
    auto cert = prover::closure_prove(p, sys);
    if (opt.json) {
        nlohmann::ordered_json j;
        j["system"] = report::system_json(sys);
        j["certificate"] = report::certificate_json(cert);
        std::cout << j.dump(2) << '\n';
    } else {
        std::cout << sys.text() << '\n';
        std::cout << "contributing types: " << sys.total_types_xyz;
        if (sys.has_uvw) std::cout << " + " << sys.total_types_uvw;
        std::cout << '\n' << report::certificate_text(cert);
    }
    switch (cert.verdict) {
        case Verdict::APWENIAN: return 0;
        case Verdict::NOT_APWENIAN: return 1;
        default: return 2;
    }
}

int cmd_oracle(const Options& opt, const std::string& sub, const std::string& range) {
    Pattern p = Pattern::parse(opt.pattern);
    int lo = 1, hi = 10;
    if (!range.empty()) {
        auto dots = range.find("..");
        if (dots == std::string::npos) {
            lo = 1;
            hi = std::stoi(range);
        } else {
            lo = std::stoi(range.substr(0, dots));
            hi = std::stoi(range.substr(dots + 2));
        }
    }
    if (lo < 0 || hi < lo || hi > 100000) throw CLI::ValidationError("range", "bad range");
    if (sub == "hankel") {
        if (hi > 4096) throw CLI::ValidationError("range", "hankel bound is 4096");
        nlohmann::ordered_json jout = nlohmann::ordered_json::array();
        for (int n = std::max(lo, 1); n <= hi; ++n) {
            if (opt.mod) {
                uint64_t r = oracle::hankel_mod(p, n, opt.mod);
                if (opt.json)
                    jout.push_back({{"n", n}, {"value", r}});
                else
                    std::cout << "H_" << n << " mod " << opt.mod << " = " << r << '\n';
            } else {
                if (n > 256) throw CLI::ValidationError("range", "exact bound is 256");
                mpz_class h = oracle::hankel_exact(p, n);
                if (opt.json)
                    jout.push_back({{"n", n}, {"value", h.get_str()}});
                else
                    std::cout << "H_" << n << " = " << h.get_str() << '\n';
            }
        }
        if (opt.json) std::cout << jout.dump(2) << '\n';
    } else if (sub == "state") {
        nlohmann::ordered_json jout = nlohmann::ordered_json::array();
        for (int n = std::max(lo, 1); n <= hi; ++n) {
            if (n > 2000) throw CLI::ValidationError("range", "state bound is 2000");
            StateVec s = oracle::state_parity(p, n);
            if (opt.json) {
                nlohmann::ordered_json e = {{"n", n}, {"X", s.x()}, {"Y", s.y()}, {"Z", s.z()}};
                if (p.last_sign() == -1) {
                    e["U"] = s.u();
                    e["V"] = s.v();
                    e["W"] = s.w();
                }
                jout.push_back(e);
            } else {
                std::cout << "n=" << n << "  X=" << s.x() << " Y=" << s.y() << " Z=" << s.z();
                if (p.last_sign() == -1)
                    std::cout << "  U=" << s.u() << " V=" << s.v() << " W=" << s.w();
                std::cout << '\n';
            }
        }
        if (opt.json) std::cout << jout.dump(2) << '\n';
    } else if (sub == "sets") {
        std::vector<uint64_t> J, K;
        for (uint64_t t = 0; t <= uint64_t(hi); ++t) {
            if (p.in_J(t)) J.push_back(t);
            if (p.last_sign() == -1 && p.in_K(t)) K.push_back(t);
        }
        auto dump = [&](const char* name, const std::vector<uint64_t>& v) {
            std::cout << name << " = {";
            for (size_t i = 0; i < v.size(); ++i) std::cout << (i ? ", " : "") << v[i];
            std::cout << "}\n";
        };
        if (opt.json) {
            nlohmann::ordered_json j = {{"J", J}};
            if (p.last_sign() == -1) j["K"] = K;
            std::cout << j.dump(2) << '\n';
        } else {
            dump("J", J);
            if (p.last_sign() == -1) dump("K", K);
        }
    } else {
        throw CLI::ValidationError("oracle", "unknown subcommand " + sub);
    }
    return 0;
}

int cmd_search(const Options& opt, int d) {
    if (d < 2 || d > 16) throw CLI::ValidationError("d", "supported range is 2..16");
    std::vector<std::string> proven;
    for (uint32_t bits = 0; bits < (uint32_t(1) << (d - 1)); ++bits) {
        std::string s = "+";
        for (int i = 1; i < d; ++i) s += (bits >> (i - 1)) & 1 ? '-' : '+';
        Pattern p = Pattern::parse(s);
        bool survives = true;
        for (int m = 1; m <= opt.scan && survives; ++m)
            if (oracle::apwenian_bit(p, m) == 0) survives = false;
        if (!survives) {
            if (opt.verbose) std::cout << s << ": refuted by determinant prefilter\n";
            continue;
        }
        auto sys = opt.fast ? recgen::fast_generate_system(p)
                            : recgen::generate_system(p, opt.jobs);
        auto cert = prover::closure_prove(p, sys);
        std::cout << s << ": " << verdict_name(cert.verdict);
        if (cert.witness) std::cout << " (witness m=" << *cert.witness << ")";
        std::cout << '\n';
        if (cert.verdict == Verdict::APWENIAN) proven.push_back(s);
    }
    std::cout << "proven Apwenian patterns of length " << d << ": " << proven.size() << '\n';
    for (auto& s : proven) {
        std::cout << "  " << s;
        if (d % 2 == 1) {
            // x -> -x flips the sign of every odd-degree coefficient and
            // preserves all Hankel determinants, pairing the survivors
            std::string partner = s;
            for (int i = 1; i < d; i += 2) partner[i] = (s[i] == '+') ? '-' : '+';
            std::cout << "  (sign-alternation partner: " << partner << ")";
        }
        std::cout << '\n';
    }
    return 0;
}

int cmd_selftest(const Options& opt, bool quick, bool corrupt) {
    int failures = 0;
    auto check = [&](bool ok, const std::string& name) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << '\n';
        if (!ok) ++failures;
    };
    if (corrupt) recgen::corrupt_psi_for_tests = true;

    {
        bool ok = true;
        int lim = quick ? 48 : 200;
        for (auto* s : {"+-", "+--", "+---+"}) {
            Pattern p = Pattern::parse(s);
            for (int m = 1; m <= lim; ++m)
                if (oracle::apwenian_bit(p, m) != oracle::count_parity(p, Family::J, m, m - 1))
                    ok = false;
        }
        check(ok, "determinant bit equals relaxed-count parity");
    }
    {
        bool ok = true;
        int lim = quick ? 24 : 48;
        Pattern p = Pattern::parse("+--");
        for (int n = 1; n <= lim; ++n) {
            mpz_class r = oracle::hankel_exact(p, n) % 3;
            if (r < 0) r += 3;
            if (oracle::hankel_mod(p, n, 3) != r.get_ui()) ok = false;
        }
        check(ok, "exact and modular determinants agree");
    }
    {
        bool ok = true;
        for (auto* s : {"+-", "+--", "+---+", "+-+"}) {
            Pattern p = Pattern::parse(s);
            if (!(recgen::fast_generate_system(p) == recgen::generate_system(p, opt.jobs)))
                ok = false;
        }
        check(ok, "fast and naive generators are identical");
    }
    {
        bool ok = true;
        for (auto* s : {"+--", "+---+"}) {
            Pattern p = Pattern::parse(s);
            auto sys = recgen::generate_system(p);
            auto rep = prover::validate_recurrences(p, sys, quick ? 2 : 3);
            if (rep.n_valid != 1) ok = false;
        }
        check(ok, "generated recurrences validate against the parity oracle");
    }
    if (!quick) {
        bool ok = true;
        Pattern p = Pattern::parse("+--");
        auto run = recgen::main_run(p);
        StateVec s2 = oracle::state_parity(p, 2), s3 = oracle::state_parity(p, 3);
        uint16_t assign = uint16_t(s2.bits) | uint16_t(s3.bits) << 6;
        for (Kind kind : {Kind::PX, Kind::PY, Kind::PZ})
            for (int h = 0; h < 3; ++h)
                for (int k = 0; k < (kind == Kind::PX ? 3 : 1); ++k)
                    recgen::enumerate_types(run, kind, h, k, [&](const TypeWord& t) {
                        auto mon = recgen::eval_type(run, t);
                        if (!mon) return;
                        int sym = ((assign & *mon) == *mon) ? 1 : 0;
                        if (sym != oracle::count_type_exact(p, Family::J, kind, h, k,
                                                           t.letters, 2, 20))
                            ok = false;
                    });
        check(ok, "symbolic type products match brute-force parities");
    }
    if (corrupt) recgen::corrupt_psi_for_tests = false;
    std::cout << (failures ? "selftest FAILED\n" : "selftest passed\n");
    return failures ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Apwenian sequence prover and enumeration toolkit"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1, 256));
    app.add_flag("--fast", opt.fast, "use the subset/matching generator");
    app.add_option("--mod", opt.mod, "compute determinants modulo q");
    app.add_flag("--verbose", opt.verbose, "verbose output");
    app.add_flag("--json", opt.json, "JSON output");
    app.add_option("--max-brute", opt.max_brute, "brute-force count bound");
    app.add_option("--scan", opt.scan, "determinant prefilter depth for search");
    app.add_option("--resume", opt.resume, "checkpoint file for resumable generation");

    auto* analyze = app.add_subcommand("analyze", "prove or refute a pattern");
    analyze->add_option("pattern", opt.pattern, "pattern, e.g. +-- or 1,-1,-1")->required();

    auto* recur = app.add_subcommand("recurrences", "print the recurrence system");
    recur->add_option("pattern", opt.pattern)->required();

    auto* orc = app.add_subcommand("oracle", "ground-truth tables");
    std::string orc_sub, orc_range;
    orc->add_option("table", orc_sub, "hankel | state | sets")->required();
    orc->add_option("pattern", opt.pattern)->required();
    orc->add_option("range", orc_range, "N or LO..HI");

    auto* search = app.add_subcommand("search", "scan all patterns of one length");
    int search_d = 3;
    search->add_option("d", search_d, "pattern length")->required();

    auto* selftest = app.add_subcommand("selftest", "internal invariant suite");
    bool quick = false, corrupt = false;
    selftest->add_flag("--quick", quick, "fast subset");
    selftest->add_flag("--corrupt-psi", corrupt, "fault-injection demo: corrupt an atom table");

    // Sign-string patterns such as "++" or ones starting with '-' look like
    // option tokens to the parser; rewrite them to the comma form up front.
    std::vector<std::string> args(argv + 1, argv + argc);
    for (std::string& a : args) {
        if (a.size() < 2 || a[0] != '+' || a.find_first_not_of("+-") != std::string::npos)
            continue;
        std::string csv;
        for (char c : a) {
            if (!csv.empty()) csv += ',';
            csv += (c == '+') ? "1" : "-1";
        }
        a = csv;
    }
    std::vector<char*> cargv{argv[0]};
    for (std::string& a : args) cargv.push_back(a.data());
    CLI11_PARSE(app, int(cargv.size()), cargv.data());
    try {
        if (app.got_subcommand(analyze)) return cmd_analyze(opt, false);
        if (app.got_subcommand(recur)) return cmd_analyze(opt, true);
        if (app.got_subcommand(orc)) return cmd_oracle(opt, orc_sub, orc_range);
        if (app.got_subcommand(search)) return cmd_search(opt, search_d);
        if (app.got_subcommand(selftest)) return cmd_selftest(opt, quick, corrupt);
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
