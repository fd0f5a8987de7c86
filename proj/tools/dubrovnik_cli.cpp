#include <algorithm>
#include <fstream>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "dubrovnik/diagram.hpp"
#include "dubrovnik/engine.hpp"
#include "dubrovnik/families.hpp"
#include "dubrovnik/moves.hpp"
#include "dubrovnik/random_diagrams.hpp"
#include "dubrovnik/reidemeister.hpp"
#include "dubrovnik/wiring.hpp"

using namespace dubrovnik;

namespace {

// 0 ok, 1 semantic input error, 2 parse error, 3 verification failure.
int exit_code_for(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::MalformedLine:
        case ErrorKind::DuplicateEdgeUse:
        case ErrorKind::NonPlanar:
        case ErrorKind::BadEndpointSet:
        case ErrorKind::NotAMatching:
        case ErrorKind::CrossingArcs:
        case ErrorKind::InvalidSpec:
            return 2;
        case ErrorKind::BoundViolated:
            return 3;
        default:
            return 1;
    }
}

std::string read_input(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
    } else {
        std::ifstream f(path);
        if (!f) fail(ErrorKind::MalformedLine, "cannot open " + path);
        ss << f.rdbuf();
    }
    return ss.str();
}

std::string degree_or_dash(const LaurentPoly& p) {
    auto d = p.z_degree();
    return d ? std::to_string(*d) : "-";
}

std::vector<int> parse_twists(const std::string& list) {
    std::vector<int> out;
    std::istringstream in(list);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        try {
            size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            fail(ErrorKind::InvalidSpec, "bad twist count '" + tok + "'");
        }
    }
    if (out.empty()) fail(ErrorKind::InvalidSpec, "empty twist list");
    return out;
}

int cmd_compute(const std::string& input, bool ambient) {
    Diagram d = Diagram::parse_pd(read_input(input));
    Evaluator ev;
    LaurentPoly p = ev.evaluate_link(d);
    if (ambient) p = Evaluator::ambient_normalize(p, Evaluator::writhe(d));
    std::cout << p.render() << "\n";
    std::cout << "zdeg=" << *p.z_degree() << " zmin=" << *p.z_min_degree()
              << " components=" << d.strand_components() << "\n";
    return 0;
}

int cmd_decompose(const std::string& input, bool basis3) {
    Diagram t = Diagram::parse_pd(read_input(input));
    Evaluator ev;
    M2Element m = ev.decompose(t);
    std::vector<std::pair<std::string, const LaurentPoly*>> rows;
    Basis3 b3;
    if (basis3) {
        b3 = to_basis3(m);
        rows = {{"P", &b3.g_P}, {"Q", &b3.g_Q}, {"R1", &b3.g_R1}};
    } else {
        rows = {{"P", &m.f_P}, {"Q", &m.f_Q}, {"R1", &m.f_R1}, {"R2", &m.f_R2}};
    }
    for (const auto& [name, poly] : rows)
        std::cout << name << ": " << poly->render() << "\n";
    std::cout << "N=" << m.source_n << " B=" << m.source_b
              << " bound=" << m.source_n - m.source_b << "\n";
    std::cout << "zdeg:";
    for (const auto& [name, poly] : rows)
        std::cout << ' ' << name << '=' << degree_or_dash(*poly);
    std::cout << "\n";
    return 0;
}

int cmd_bound(const std::string& wiring_path, const std::vector<std::string>& tangle_paths) {
    WiringDiagram w = parse_wiring(read_input(wiring_path));
    std::vector<Diagram> tangles;
    for (const auto& path : tangle_paths)
        tangles.push_back(Diagram::parse_pd(read_input(path)));
    Evaluator ev;
    int bound = wiring_degree_bound(w, tangles);
    LaurentPoly direct = ev.evaluate_link(insert_tangles(w, tangles));
    auto deg = direct.z_degree();
    if (!deg) fail(ErrorKind::Internal, "link polynomial vanished");
    int slack = bound - *deg;
    std::cout << "bound=" << bound << " actual=" << *deg << " slack=" << slack << "\n";
    return slack < 0 ? 3 : 0;
}

using CaseList = std::vector<std::pair<std::string, bool>>;

void suite_skein(Evaluator& ev, unsigned long long seed, int max, CaseList& out) {
    for (int i = 0; i < max; ++i) {
        Diagram d = random_link(seed + static_cast<unsigned long long>(i), 3 + i % 5);
        int c = i % d.n();
        SkeinTriple tr = skein_triple(d, c);
        LaurentPoly rhs = ev.evaluate_link(tr.switched) +
                          LaurentPoly::z_power(1) * (ev.evaluate_link(tr.smooth_0) -
                                                     ev.evaluate_link(tr.smooth_inf));
        out.emplace_back("skein n=" + std::to_string(d.n()) + " c=" + std::to_string(c) +
                             " case=" + std::to_string(i),
                         ev.evaluate_link(d) == rhs);
    }
}

void suite_isotopy(Evaluator& ev, unsigned long long seed, int max, CaseList& out) {
    for (int i = 0; i < max; ++i) {
        Diagram d = random_link(seed + 5000 + static_cast<unsigned long long>(i), 2 + i % 4);
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ull + static_cast<unsigned long long>(i)));
        Diagram walked = random_moves(d, 8, rng);
        out.emplace_back("isotopy n=" + std::to_string(d.n()) + "->" +
                             std::to_string(walked.n()) + " case=" + std::to_string(i),
                         ev.evaluate_link(walked) == ev.evaluate_link(d));
    }
}

void suite_bounds(Evaluator& ev, unsigned long long seed, int max, CaseList& out) {
    for (int i = 0; i < max; ++i) {
        if (i % 2 == 0) {
            Diagram t = random_tangle(seed + 9000 + static_cast<unsigned long long>(i), 1 + i % 6);
            M2Element m = ev.decompose(t);
            int bound = m.source_n - m.source_b;
            int deg = 0;
            bool any = false;
            for (const LaurentPoly* f : {&m.f_P, &m.f_Q, &m.f_R1, &m.f_R2})
                if (auto d = f->z_degree()) {
                    deg = any ? std::max(deg, *d) : *d;
                    any = true;
                }
            out.emplace_back("bound tangle n=" + std::to_string(t.n()) + " bound=" +
                                 std::to_string(bound) + " actual=" + std::to_string(deg),
                             !any || deg <= bound);
        } else {
            Diagram d = random_link(seed + 9000 + static_cast<unsigned long long>(i), 3 + i % 5);
            int bound = bridge_degree_bound(d);
            int deg = *ev.evaluate_link(d).z_degree();
            out.emplace_back("bound link n=" + std::to_string(d.n()) + " bound=" +
                                 std::to_string(bound) + " actual=" + std::to_string(deg),
                             deg <= bound);
        }
    }
}

void suite_chains(Evaluator& ev, int max_regions, CaseList& out) {
    for (int k = 2; k <= max_regions; ++k) {
        for (unsigned mask = 0; mask < (1u << k); ++mask) {
            ChainSpec spec;
            std::string signs;
            int p = 0, q = 0;
            for (int i = 0; i < k; ++i) {
                bool pos = (mask >> i) & 1;
                spec.twists.push_back(pos ? 2 : -2);
                signs += pos ? '+' : '-';
                (pos ? p : q) += 1;
            }
            LaurentPoly val = ev.evaluate_link(build_chain(spec));
            int deg = *val.z_degree();
            int zmin = *val.z_min_degree();
            std::string name = "chain k=" + std::to_string(k) + " signs=" + signs;
            if (k == 2 && p == 1) {
                // Opposite twists across only two regions untwist completely.
                out.emplace_back(name + " degenerate zdeg=" + std::to_string(deg),
                                 deg == 0 && zmin == -1);
            } else {
                int want = expected_chain_degree(p, q, chain_crossing_count(spec));
                out.emplace_back(name + " zdeg=" + std::to_string(deg) + " expected=" +
                                     std::to_string(want),
                                 deg == want && zmin == -(k - 1));
            }
        }
    }
}

void suite_rational(Evaluator& ev, int max_n, CaseList& out) {
    std::vector<std::string> words = {""};
    for (int len = 1; len < max_n; ++len) {
        std::vector<std::string> next;
        for (const auto& w : words)
            if (static_cast<int>(w.size()) == len - 1)
                for (char c : {'V', 'H'}) next.push_back(w + c);
        for (auto& w : next) words.push_back(std::move(w));
    }
    for (bool negative : {false, true})
        for (const auto& word : words) {
            if (word.empty()) continue;
            RationalWord r{negative, word};
            LeadingFormReport rep = verify_leading_form(r, ev);
            bool ok = rep.degree_exact && rep.match[3] &&
                      conway_sign_positive(r) == !negative;
            out.emplace_back(std::string("rational sign=") + (negative ? '-' : '+') +
                                 " word=" + word + " n=" + std::to_string(rep.n),
                             ok);
        }
}

void suite_mutation(Evaluator& ev, CaseList& out) {
    for (const std::vector<int>& twists :
         {std::vector<int>{2, 4, -4, 2}, std::vector<int>{2, -2, 2, -2}}) {
        ChainSpec spec{twists, true};
        std::vector<int> perm(twists.size());
        std::iota(perm.begin(), perm.end(), 0);
        do {
            std::string name = "mutation twists=";
            for (size_t i = 0; i < perm.size(); ++i)
                name += (i ? "," : "") + std::to_string(twists[static_cast<size_t>(perm[i])]);
            out.emplace_back(name, permuted_twists_equal(spec, perm, ev));
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
}

int cmd_verify(const std::string& suite, int max, unsigned long long seed) {
    static const std::vector<std::string> known = {"skein",  "isotopy",  "bounds",
                                                   "chains", "rational", "mutation"};
    std::vector<std::string> run;
    if (suite == "all")
        run = known;
    else if (std::find(known.begin(), known.end(), suite) != known.end())
        run.push_back(suite);
    else
        fail(ErrorKind::InvalidSpec, "unknown suite '" + suite + "'");

    Evaluator ev;
    int passed = 0, total = 0;
    for (const auto& name : run) {
        CaseList cases;
        int resolved = max;
        if (name == "skein") {
            if (resolved <= 0) resolved = 50;
            suite_skein(ev, seed, resolved, cases);
        } else if (name == "isotopy") {
            if (resolved <= 0) resolved = 20;
            suite_isotopy(ev, seed, resolved, cases);
        } else if (name == "bounds") {
            if (resolved <= 0) resolved = 40;
            suite_bounds(ev, seed, resolved, cases);
        } else if (name == "chains") {
            if (resolved <= 0) resolved = 6;
            resolved = std::min(resolved, 9); // sign words grow as 2^k
            suite_chains(ev, resolved, cases);
        } else if (name == "rational") {
            if (resolved <= 0) resolved = 5;
            resolved = std::min(resolved, 9);
            suite_rational(ev, resolved, cases);
        } else {
            resolved = 0; // mutation enumerates fixed permutation sets
            suite_mutation(ev, cases);
        }
        std::cout << "suite=" << name << " seed=" << seed << " max=" << resolved << "\n";
        for (const auto& [label, ok] : cases) {
            std::cout << label << " ... " << (ok ? "pass" : "FAIL") << "\n";
            ++total;
            if (ok) ++passed;
        }
    }
    std::cout << "summary: " << passed << "/" << total << " passed\n";
    return passed == total ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dubrovnik polynomial toolkit"};
    app.require_subcommand(1);

    std::string input;
    bool ambient = false;
    auto* compute = app.add_subcommand("compute", "evaluate a closed diagram in PD format");
    compute->add_option("--input", input, "PD file, or - for stdin")->required();
    compute->add_flag("--ambient", ambient, "normalize by the writhe");

    std::string dec_input;
    bool basis3 = false;
    auto* decompose = app.add_subcommand("decompose", "decompose a tangle over the basis");
    decompose->add_option("--input", dec_input, "PD file, or - for stdin")->required();
    decompose->add_flag("--basis3", basis3, "report 3-basis coordinates");

    std::string wiring_path;
    std::vector<std::string> tangle_paths;
    auto* bound = app.add_subcommand("bound", "check the wiring degree bound");
    bound->add_option("--wiring", wiring_path, "wiring file")->required();
    bound->add_option("--tangles", tangle_paths, "tangle PD files, one per slot")->required();

    auto* family = app.add_subcommand("family", "generate a family diagram as PD text");
    family->require_subcommand(1);
    std::string twists;
    bool open_chain = false;
    auto* chain = family->add_subcommand("chain", "chain of circles with even twist regions");
    chain->add_option("--twists", twists, "comma-separated even twist counts")->required();
    chain->add_flag("--open", open_chain, "leave the chain unclosed");
    std::string sign = "+", word;
    auto* rational = family->add_subcommand("rational", "rational tangle from a build word");
    rational->add_option("--sign", sign, "+ or -");
    rational->add_option("--word", word, "letters V and H");

    std::string suite;
    int max = 0;
    unsigned long long seed = 20260815;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite, "skein|isotopy|bounds|chains|rational|mutation|all")
        ->required();
    verify->add_option("--max", max, "suite size cap (0 = default)");
    verify->add_option("--seed", seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (compute->parsed()) return cmd_compute(input, ambient);
        if (decompose->parsed()) return cmd_decompose(dec_input, basis3);
        if (bound->parsed()) return cmd_bound(wiring_path, tangle_paths);
        if (family->parsed()) {
            if (chain->parsed()) {
                std::cout << build_chain({parse_twists(twists), !open_chain}).to_pd_text();
                return 0;
            }
            if (sign != "+" && sign != "-") fail(ErrorKind::InvalidSpec, "sign must be + or -");
            std::cout << build_rational({sign == "-", word}).to_pd_text();
            return 0;
        }
        if (verify->parsed()) return cmd_verify(suite, max, seed);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.kind());
    }
    return 0;
}
