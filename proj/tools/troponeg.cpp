// troponeg: command line front end. Exit status 0 on success, 1 on domain
// errors (bad input, unsupported cases, no witness), 2 on usage errors.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "troponeg/io/json.hpp"
#include "troponeg/io/parse.hpp"
#include "troponeg/io/svg.hpp"
#include "troponeg/io/workspace.hpp"
#include "troponeg/tropicalization.hpp"

using namespace troponeg;
using io::json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string file;
    std::vector<std::string> expressions;
    std::vector<std::string> vars;
    std::string output;
    std::size_t threads = 1;
    std::string fmt = "json";
    OracleConfig oracle;
    // sample
    double t = 10;
    std::size_t count = 20000;
    std::uint64_t sample_seed = 7;
    double box = 5;
    // rootbound / witness
    std::string dir;
    std::string at;
    std::size_t p = 0;
    std::string eps, delta;
    // plot
    std::string layer = "newton";
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

io::SignomialSystem load(const Options& o) {
    if (!o.file.empty() && !o.expressions.empty()) throw UsageError("give either -f or -e, not both");
    if (o.file.empty() && o.expressions.empty()) throw UsageError("no input: use -f <file> or -e <expression>");
    if (!o.expressions.empty()) {
        std::string text;
        for (const auto& e : o.expressions) text += e + "\n";
        return io::parse_expressions(text, o.vars);
    }
    std::string text;
    if (o.file == "-") {
        text = read_all(std::cin);
    } else {
        std::ifstream in(o.file);
        if (!in) throw DomainError("cannot read " + o.file);
        text = read_all(in);
    }
    io::SignomialSystem s = io::parse_input(text);
    if (s.signomials.empty()) throw DomainError("input contains no signomials");
    return s;
}

void emit(const Options& o, const std::string& text) {
    if (o.output.empty() || o.output == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw DomainError("cannot write " + o.output);
    out << text;
}

RationalVector parse_vector(const std::string& text, std::size_t n, const char* what) {
    RationalVector v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            v.push_back(parse_rational(item));
        } catch (const std::exception&) {
            throw UsageError(std::string("bad entry '") + item + "' in " + what);
        }
    }
    if (v.size() != n) throw UsageError(std::string(what) + " needs " + std::to_string(n) + " comma-separated entries");
    return v;
}

json per_signomial(io::Workspace& ws, const std::function<json(const Signomial&, const NewtonPolytope&)>& body) {
    json a = json::array();
    for (const auto& f : ws.signomials()) {
        json j = body(f, ws.newton(f));
        j["expression"] = io::to_expression(f, ws.variables());
        j["hash"] = io::content_hash(f);
        a.push_back(std::move(j));
    }
    return {{"vars", ws.variables()}, {"signomials", a}};
}

std::string verdict_output(const Verdict& v) {
    json j = io::to_json(v);
    if (is_unknown(v)) j["sign"] = "indeterminate";
    return io::dump(j);
}

void require_svg_or_json(const Options& o) {
    if (o.fmt != "json" && o.fmt != "svg") throw UsageError("--fmt must be json or svg here");
}

std::string cone_output(const Options& o, const ConeUnion& U) {
    require_svg_or_json(o);
    if (o.fmt == "svg") return io::emit_svg_2d(io::cone_scene(U, o.box));
    return io::dump(io::to_json(U));
}

int run(const std::string& command, Options& o) {
    o.oracle.threads = o.threads;
    o.oracle.validate();
    io::Workspace ws(load(o), o.threads);
    const auto& fs = ws.signomials();
    const auto& vars = ws.variables();

    if (command == "parse") {
        emit(o, io::dump(io::to_json(ws.system())));
    } else if (command == "newton") {
        require_svg_or_json(o);
        if (o.fmt == "svg") {
            emit(o, io::emit_svg_2d(io::newton_scene(fs.front())));
        } else {
            emit(o, io::dump(per_signomial(ws, [](const Signomial&, const NewtonPolytope& N) {
                return json{{"polytope", io::to_json(N.polytope)}};
            })));
        }
    } else if (command == "faces") {
        emit(o, io::dump(per_signomial(ws, [](const Signomial&, const NewtonPolytope& N) {
            json faces = json::array();
            for (std::size_t i = 0; i < N.faces.size(); ++i) {
                json j = io::to_json(N.faces[i]);
                j["negative"] = N.is_negative(N.faces[i]);
                j["normal_cone"] = io::to_json(N.normal_cones[i]);
                faces.push_back(std::move(j));
            }
            return json{{"faces", faces}};
        })));
    } else if (command == "negcone") {
        const auto Ns = ws.newtons();
        emit(o, cone_output(o, intersect_negative_normal_cones(Ns)));
    } else if (command == "regular") {
        const auto Ns = ws.newtons();
        emit(o, cone_output(o, regular_part(Ns, o.threads)));
    } else if (command == "sparse") {
        emit(o, io::dump(per_signomial(ws, [](const Signomial&, const NewtonPolytope& N) {
            return json{{"maximally_sparse", is_maximally_sparse(N)}};
        })));
    } else if (command == "bounded") {
        emit(o, io::dump(per_signomial(ws, [](const Signomial&, const NewtonPolytope& N) {
            return json{{"bounded", bounded_log_image(N)}};
        })));
    } else if (command == "oracle") {
        emit(o, verdict_output(decide_joint_negativity(fs, o.oracle)));
    } else if (command == "rootbound") {
        if (fs.size() != 1) throw DomainError("rootbound takes a single signomial");
        const Signomial& f = fs.front();
        if (!o.dir.empty()) {
            const RationalVector v = parse_vector(o.dir, f.dimension(), "--dir");
            const RationalVector x =
                o.at.empty() ? RationalVector(f.dimension(), Rational(1)) : parse_vector(o.at, f.dimension(), "--at");
            emit(o, io::dump(io::to_json(pushing_threshold(f, v, x))));
            return 0;
        }
        if (f.dimension() != 1) throw DomainError("rootbound without --dir needs a univariate signomial");
        std::vector<UnivariateSignomial::Term> terms;
        for (const auto& [e, c] : f.terms()) terms.push_back({e[0], c});
        UnivariateSignomial g(std::move(terms));
        if (g.leading_coefficient() < 0) {
            std::vector<UnivariateSignomial::Term> flipped;
            for (const auto& t : g.terms()) flipped.push_back({t.exponent, -t.coefficient});
            g = UnivariateSignomial(std::move(flipped));
        }
        const auto& ts = g.terms();
        const Rational eps = o.eps.empty() ? g.leading_coefficient() / 2 : parse_rational(o.eps);
        json bounds = json::array();
        std::optional<Rational> best;
        for (std::size_t p = 1; p <= ts.size(); ++p) {
            if (o.p != 0 && p != o.p) continue;
            const Rational delta = !o.delta.empty() ? parse_rational(o.delta)
                                   : p >= 2         ? ts[p - 1].exponent - ts[p - 2].exponent
                                                    : Rational(1);
            try {
                const Rational b = cauchy_bound(g, p, eps, delta);
                bounds.push_back({{"p", p}, {"eps", to_string(eps)}, {"delta", to_string(delta)}, {"bound", to_string(b)}});
                if (!best || b < *best) best = b;
            } catch (const DomainError& e) {
                if (o.p != 0) throw;
            }
        }
        json j = {{"cauchy", bounds}, {"largest_root_bound", to_string(largest_root_upper_bound(g))}};
        j["best_cauchy"] = best ? json(to_string(*best)) : json(nullptr);
        emit(o, io::dump(j));
    } else if (command == "sigma") {
        const auto Ns = ws.newtons();
        const SigmaResult s = sigma(Ns, o.oracle);
        emit(o, o.fmt == "svg" ? io::emit_svg_2d(io::cone_scene(s.certified, o.box)) : io::dump(io::to_json(s)));
    } else if (command == "sandwich") {
        const auto Ns = ws.newtons();
        emit(o, io::dump(io::to_json(inclusion_report(Ns, o.oracle))));
    } else if (command == "nb") {
        emit(o, io::dump(per_signomial(ws, [&](const Signomial&, const NewtonPolytope& N) {
            const NbVerdict nb = nb_check(N, o.oracle);
            return json{{"nb", io::to_json(nb, vars)}, {"claim", io::to_json(trop_claim(N, nb))}};
        })));
    } else if (command == "sample") {
        const SampleCloud cloud = empirical_log_sample(fs, o.t, o.box, o.count, o.sample_seed, o.threads);
        if (o.fmt == "csv") {
            emit(o, io::to_csv(cloud.points, ws.dimension()));
        } else if (o.fmt == "svg") {
            emit(o, io::emit_svg_2d(io::scatter_scene(ws.dimension(), cloud.points, o.box)));
        } else {
            json pts = json::array();
            for (const auto& p : cloud.points) pts.push_back(p);
            emit(o, io::dump({{"t", o.t},
                              {"drawn", cloud.drawn},
                              {"kept", cloud.points.size()},
                              {"indeterminate", cloud.indeterminate},
                              {"sup_norm", sup_norm(cloud)},
                              {"points", pts}}));
        }
    } else if (command == "witness") {
        if (o.dir.empty()) throw UsageError("witness needs --dir");
        const RationalVector v = parse_vector(o.dir, ws.dimension(), "--dir");
        const ConvergenceRecord r = o.at.empty() ? witness_convergence(fs, v, o.oracle)
                                                 : witness_convergence(fs, v, parse_vector(o.at, ws.dimension(), "--at"), o.oracle);
        emit(o, io::dump(io::to_json(r)));
    } else if (command == "plot") {
        const auto Ns = ws.newtons();
        io::SvgScene scene;
        if (o.layer == "newton") {
            scene = io::newton_scene(fs.front());
        } else if (o.layer == "negcone") {
            scene = io::cone_scene(intersect_negative_normal_cones(Ns), o.box);
        } else if (o.layer == "regular") {
            scene = io::cone_scene(regular_part(Ns, o.threads), o.box);
        } else if (o.layer == "sigma") {
            scene = io::cone_scene(sigma(Ns, o.oracle).certified, o.box);
        } else if (o.layer == "sample") {
            scene = io::scatter_scene(ws.dimension(), empirical_log_sample(fs, o.t, o.box, o.count, o.sample_seed, o.threads).points, o.box);
        } else {
            throw UsageError("unknown --layer " + o.layer);
        }
        emit(o, io::emit_svg_2d(scene));
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negative normal cones and tropicalizations of signomial sets."};
    app.require_subcommand(1);
    Options o;

    const auto input = [&](CLI::App* sub) {
        sub->add_option("-f,--file", o.file, "Input file: expressions or signomial JSON ('-' for stdin)");
        sub->add_option("-e,--expr", o.expressions, "Inline expression (repeatable)");
        sub->add_option("--vars", o.vars, "Variable order for expressions")->delimiter(',');
        sub->add_option("-o,--output", o.output, "Output path (default stdout)");
        sub->add_option("--threads", o.threads, "Worker threads")->envname("TROPONEG_THREADS")->check(CLI::PositiveNumber);
    };
    const auto oracle_flags = [&](CLI::App* sub) {
        sub->add_option("--tol", o.oracle.tolerance, "Search stopping tolerance");
        sub->add_option("--starts", o.oracle.starts, "Search starts");
        sub->add_option("--budget", o.oracle.budget, "Iterations per start");
        sub->add_option("--seed", o.oracle.seed, "Search seed");
    };
    const auto fmt = [&](CLI::App* sub, std::vector<std::string> allowed) {
        sub->add_option("--fmt", o.fmt, "Output format")->check(CLI::IsMember(allowed));
    };

    const std::vector<std::pair<const char*, const char*>> plain{
        {"parse", "Parse and print the canonical signomial JSON"},
        {"newton", "Newton polytopes"},
        {"faces", "Face lattices with negative flags and normal cones"},
        {"negcone", "Intersection of the negative normal cones"},
        {"regular", "Regular part of the negative normal cone"},
        {"sparse", "Maximal sparsity test"},
        {"bounded", "Boundedness of the logarithmic image"},
    };
    std::vector<CLI::App*> subs;
    for (const auto& [name, help] : plain) {
        CLI::App* sub = app.add_subcommand(name, help);
        input(sub);
        const std::string n = name;
        if (n == "newton" || n == "negcone" || n == "regular") fmt(sub, {"json", "svg"});
        if (n == "negcone" || n == "regular") sub->add_option("--box", o.box, "SVG window half-width");
        subs.push_back(sub);
    }
    CLI::App* oracle = app.add_subcommand("oracle", "Decide whether all signomials are jointly negative somewhere");
    input(oracle);
    oracle_flags(oracle);
    CLI::App* rootbound = app.add_subcommand("rootbound", "Cauchy-type root bounds or a pushing threshold");
    input(rootbound);
    rootbound->add_option("--dir", o.dir, "Direction v for the pushing threshold of f(t^v * x)");
    rootbound->add_option("--at", o.at, "Point x (default all ones)");
    rootbound->add_option("--p", o.p, "Only this split index (1-based)");
    rootbound->add_option("--eps", o.eps, "Coefficient margin (default half the leading coefficient)");
    rootbound->add_option("--delta", o.delta, "Exponent gap (default the gap below index p)");
    CLI::App* sig = app.add_subcommand("sigma", "Certified actual negative normal cone");
    input(sig);
    oracle_flags(sig);
    fmt(sig, {"json", "svg"});
    sig->add_option("--box", o.box, "SVG window half-width");
    CLI::App* sandwich = app.add_subcommand("sandwich", "Regular part, certified cone and outer cone with inclusions");
    input(sandwich);
    oracle_flags(sandwich);
    CLI::App* nb = app.add_subcommand("nb", "Face-wise genericity labels and equality claims");
    input(nb);
    oracle_flags(nb);
    CLI::App* sample = app.add_subcommand("sample", "Rejection sample of the logarithmic image");
    input(sample);
    sample->add_option("--t", o.t, "Logarithm base t > 1");
    sample->add_option("--n", o.count, "Number of draws");
    sample->add_option("--seed", o.sample_seed, "Sampling seed");
    sample->add_option("--box", o.box, "Half-width of the sampling box in log_t coordinates");
    fmt(sample, {"csv", "svg", "json"});
    CLI::App* witness = app.add_subcommand("witness", "Follow t^v * x for a certified direction v");
    input(witness);
    oracle_flags(witness);
    witness->add_option("--dir", o.dir, "Direction v")->required();
    witness->add_option("--at", o.at, "Witness x (default from the oracle)");
    CLI::App* plot = app.add_subcommand("plot", "SVG figure of one layer");
    input(plot);
    oracle_flags(plot);
    plot->add_option("--layer", o.layer, "newton, negcone, regular, sigma or sample")
        ->check(CLI::IsMember({"newton", "negcone", "regular", "sigma", "sample"}));
    plot->add_option("--box", o.box, "Window half-width");
    plot->add_option("--t", o.t, "Logarithm base for the sample layer");
    plot->add_option("--n", o.count, "Draws for the sample layer");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    const std::string command = app.get_subcommands().front()->get_name();
    if (command == "sample" && o.fmt == "json" && !app.get_subcommands().front()->count("--fmt")) o.fmt = "csv";
    try {
        return run(command, o);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const io::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
