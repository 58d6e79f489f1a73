#include "zplot/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "zplot/analysis.hpp"
#include "zplot/parallel.hpp"
#include "zplot/vanderput.hpp"

namespace zplot {

namespace {

// Writes to --out when given, else to the primary stream.
struct Sink {
    std::ostream* os;
    std::ofstream file;
    Sink(const std::string& path, std::ostream& fallback) {
        if (path.empty()) {
            os = &fallback;
        } else {
            file.open(path, std::ios::binary);
            if (!file) throw std::ios_base::failure("cannot write " + path);
            os = &file;
        }
    }
    std::ostream& get() { return *os; }
};

std::string join_rats(const std::vector<mpq_class>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += " ";
        s += format_rational(v[i]);
    }
    return s;
}

Surface parse_surface(const std::string& s) {
    if (s == "square") return Surface::Square;
    if (s == "torus") return Surface::Torus;
    if (s == "cylinder-x") return Surface::CylinderX;
    if (s == "cylinder-y") return Surface::CylinderY;
    throw CLI::ValidationError("--surface", "unknown surface " + s);
}

void print_prediction(std::ostream& os, const LinkPrediction& pred, const PsiFamily& psi) {
    os << "slope: " << format_rational(pred.slope) << "\n";
    os << "m: " << pred.m.get_str() << "\n";
    os << "knots: " << pred.knot_count << "\n";
    os << "intercepts: " << join_rats(pred.intercepts) << "\n";
    os << "offsets: " << join_rats(pred.full_offsets) << "\n";
    os << "psi-phases: " << join_rats(psi.phases) << "\n";
}

struct Options {
    int p = 2;
    std::string a, b;
    std::string machine, machine_b;
    std::string points, out, input, svg, mode = "exhaustive", surface = "torus", format = "csv";
    std::vector<std::string> cables;
    int k = 8, kmin = 4, kmax = 10, res = 256, depth = 6, precision = 64, cmp = 40;
    std::uint64_t mmax = 256, prefix = 1024, M = 1 << 16, seed = 0;
    std::string tol = "1/256", min_support = "9/10";
    long max_num = 8, max_den = 8;
    unsigned jobs = default_jobs();
    unsigned union_window = 1;
    bool allow_large = false;
    bool no_trim = false;
};

int dispatch(const std::string& cmd, const Options& o, std::ostream& out) {
    if (cmd == "synth") {
        PadicRational a(parse_rational(o.a), o.p), b(parse_rational(o.b), o.p);
        Sink sink(o.out, out);
        sink.get() << codec_save(synth_affine(a, b));
        return 0;
    }
    if (cmd == "adder") {
        Sink sink(o.out, out);
        sink.get() << codec_save(adder(o.p));
        return 0;
    }
    if (cmd == "compose") {
        Transducer a = load_file(o.machine, !o.no_trim);
        Transducer b = load_file(o.machine_b, !o.no_trim);
        Sink sink(o.out, out);
        sink.get() << codec_save(compose(a, b));
        return 0;
    }
    if (cmd == "run") {
        Transducer t = load_file(o.machine, !o.no_trim);
        std::vector<Word> ins;
        std::istringstream is(o.input);
        std::string tok;
        while (std::getline(is, tok, ',')) ins.push_back(parse_word_msb(tok, t.p));
        std::vector<Word> outs = run(t, ins);
        Sink sink(o.out, out);
        for (const Word& w : outs) sink.get() << format_word_msb(w) << "\n";
        return 0;
    }
    if (cmd == "components") {
        Transducer t = load_file(o.machine, !o.no_trim);
        ComponentReport rep = components(t);
        Sink sink(o.out, out);
        sink.get() << "states: " << t.num_states << "\n";
        sink.get() << "components: " << rep.num_components << "\n";
        std::size_t ergodic = 0;
        for (char e : rep.ergodic) ergodic += e;
        sink.get() << "ergodic: " << ergodic << "\n";
        sink.get() << "transient-states:";
        for (State s : rep.transient_states) sink.get() << " " << s;
        sink.get() << "\n";
        sink.get() << "minimal: " << (rep.is_minimal ? "yes" : "no") << "\n";
        return 0;
    }
    if (cmd == "plot" || cmd == "monna") {
        Transducer t = load_file(o.machine, !o.no_trim);
        PlotSet ps;
        if (cmd == "monna") {
            ps = monna_points(t, o.k, o.allow_large);
        } else if (o.mode == "exhaustive") {
            ps = layer(t, o.k, o.allow_large, o.jobs);
            for (int k = o.k - static_cast<int>(o.union_window) + 1; k < o.k; ++k) {
                if (k < 1) continue;
                PlotSet extra = layer(t, k, o.allow_large, o.jobs);
                ps.points.insert(ps.points.end(), extra.points.begin(), extra.points.end());
            }
        } else if (o.mode.rfind("sample:", 0) == 0) {
            SampleSpec spec;
            spec.count = std::stoull(o.mode.substr(7));
            spec.seed = o.seed;
            ps = layer_sampled(t, o.k, spec);
        } else {
            throw CLI::ValidationError("--mode", "expected exhaustive or sample:N");
        }
        ps.surface = parse_surface(o.surface);
        Sink sink(o.out, out);
        export_csv(ps, sink.get());
        return 0;
    }
    if (cmd == "predict") {
        PadicRational a(parse_rational(o.a), o.p), b(parse_rational(o.b), o.p);
        LinkPrediction pred = predict_affine(a, b);
        Sink sink(o.out, out);
        print_prediction(sink.get(), pred, psi_family(a, b));
        if (!o.svg.empty()) {
            if (o.points.empty())
                throw CLI::ValidationError("--points", "svg overlay needs a points csv");
            PlotSet ps = import_csv_file(o.points, o.p);
            std::vector<CableSpec> cables;
            for (const mpq_class& e : pred.intercepts) cables.push_back({pred.slope, e});
            export_svg_file(ps, o.res, cables, o.svg);
        }
        return 0;
    }
    if (cmd == "verify") {
        Transducer t = load_file(o.machine, !o.no_trim);
        PadicRational a(parse_rational(o.a), o.p), b(parse_rational(o.b), o.p);
        AffineParams prm(a, b);
        VerifyReport rep = verify_affine(t, prm, o.kmin, o.kmax, o.jobs);
        Sink sink(o.out, out);
        if (!rep.congruence_pass) {
            sink.get() << "congruence: FAIL at k=" << rep.fail_k << " X=" << rep.fail_x << "\n";
            return 1;
        }
        sink.get() << "congruence: pass\n";
        for (auto& [k, d] : rep.max_distance)
            sink.get() << "max-distance k=" << k << ": " << format_rational(d) << "\n";
        sink.get() << "knots-predicted: " << rep.predicted_knots << "\n";
        sink.get() << "knots-observed: " << rep.empirical_knots << "\n";
        return rep.empirical_knots == rep.predicted_knots ? 0 : 1;
    }
    if (cmd == "detect") {
        PlotSet ps = import_csv_file(o.points, o.p);
        auto found = detect_lines(ps, o.max_num, o.max_den, parse_rational(o.tol),
                                  parse_rational(o.min_support), o.jobs);
        Sink sink(o.out, out);
        if (found.empty()) {
            sink.get() << "no linear structure at these bounds\n";
            return 0;
        }
        for (const LineCandidate& c : found) {
            sink.get() << "slope: " << format_rational(c.slope)
                       << " support: " << format_rational(c.support)
                       << " intercepts: " << c.intercepts.size()
                       << " residual: " << format_rational(c.residual) << "\n";
        }
        return 0;
    }
    if (cmd == "vdp") {
        Transducer t = load_file(o.machine, !o.no_trim);
        auto coeffs = vdp_coeffs(machine_oracle(t), o.mmax, o.precision);
        Sink sink(o.out, out);
        sink.get() << "m,B_m,b_m\n";
        for (const VdpCoefficient& c : coeffs)
            sink.get() << c.m << "," << c.B.get_str() << ","
                       << (c.normalized ? c.b.get_str() : "?") << "\n";
        return 0;
    }
    if (cmd == "kernel") {
        Transducer t = load_file(o.machine, !o.no_trim);
        KernelReport rep;
        if (t.p == 2 && o.precision <= 63) {
            MachineBSeq seq{&t, o.precision, o.cmp};
            rep = kernel_probe(seq, t.p, o.depth, o.prefix);
        } else {
            Oracle f = machine_oracle(t);
            int K = o.precision, cmp = o.cmp;
            auto seq = [&f, K, cmp](std::uint64_t m) {
                std::vector<VdpCoefficient> c = vdp_coeffs(f, m + 1, K);
                mpz_class r = c.back().b % pow_mpz(f.p, cmp);
                return r;
            };
            rep = kernel_probe(seq, t.p, o.depth, o.prefix);
        }
        Sink sink(o.out, out);
        sink.get() << "status: "
                   << (rep.status == KernelReport::Status::Finite ? "finite" : "undecided") << "\n";
        sink.get() << "classes: " << rep.classes << "\n";
        sink.get() << "depth: " << rep.depth << "\n";
        sink.get() << "prefix: " << rep.prefix_len << "\n";
        sink.get() << "alphabet-overflow: " << (rep.alphabet_overflow ? "yes" : "no") << "\n";
        sink.get() << "classes (j,t):";
        for (auto& [j, off] : rep.class_reps) sink.get() << " (" << j << "," << off << ")";
        sink.get() << "\n";
        return 0;
    }
    if (cmd == "squaring") {
        GrowthTable table = squaring_growth(o.M, o.p);
        Sink sink(o.out, out);
        sink.get() << "j,count\n";
        for (auto& [j, c] : table.counts) sink.get() << j << "," << c << "\n";
        sink.get() << "strictly-increasing: " << (table.strictly_increasing ? "yes" : "no") << "\n";
        return 0;
    }
    if (cmd == "export") {
        PlotSet ps = import_csv_file(o.points, o.p);
        std::vector<CableSpec> cables;
        for (const std::string& spec : o.cables) {
            auto colon = spec.find(':');
            if (colon == std::string::npos)
                throw CLI::ValidationError("--cable", "expected slope:intercept");
            cables.push_back(
                {parse_rational(spec.substr(0, colon)), parse_rational(spec.substr(colon + 1))});
        }
        Sink sink(o.out, out);
        if (o.format == "csv") {
            export_csv(ps, sink.get());
        } else if (o.format == "pgm") {
            export_pgm(raster(ps, o.res), sink.get());
        } else if (o.format == "svg") {
            export_svg(ps, o.res, cables, sink.get());
        } else {
            throw CLI::ValidationError("--format", "expected csv, pgm or svg");
        }
        return 0;
    }
    throw CLI::ValidationError("subcommand", "unknown command " + cmd);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact plots, limit-plot predictions and verification for p-adic transducers"};
    app.require_subcommand(1);
    Options o;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--out", o.out, "write primary output to this file");
        sub->add_option("--jobs", o.jobs, "worker threads (output is identical for any value)");
    };
    auto add_rat_pair = [&](CLI::App* sub) {
        sub->add_option("--p", o.p, "alphabet prime")->capture_default_str();
        sub->add_option("--a", o.a, "slope, as num or num/den")->required();
        sub->add_option("--b", o.b, "offset, as num or num/den")->required();
    };
    auto add_machine = [&](CLI::App* sub) {
        sub->add_option("--machine", o.machine, "machine file in the text codec")->required();
        sub->add_flag("--no-trim", o.no_trim, "keep unreachable states on load");
    };

    add_rat_pair(app.add_subcommand("synth", "synthesize the machine for z -> a*z + b"));
    add_common(app.get_subcommand("synth"));

    auto* sub_adder = app.add_subcommand("adder", "emit the 2-input carry adder");
    sub_adder->add_option("--p", o.p, "alphabet prime")->capture_default_str();
    add_common(sub_adder);

    auto* sub_run = app.add_subcommand("run", "run a machine on digit words (MSB first)");
    add_machine(sub_run);
    sub_run->add_option("--input", o.input, "comma-separated input words")->required();
    add_common(sub_run);

    auto* sub_comp = app.add_subcommand("components", "ergodic decomposition report");
    add_machine(sub_comp);
    add_common(sub_comp);

    auto* sub_compose = app.add_subcommand("compose", "sequential composition b after a");
    sub_compose->add_option("--a-machine", o.machine, "first machine")->required();
    sub_compose->add_option("--b-machine", o.machine_b, "second machine")->required();
    add_common(sub_compose);

    auto* sub_plot = app.add_subcommand("plot", "emit layer-k points as csv");
    add_machine(sub_plot);
    sub_plot->add_option("--k", o.k, "word length")->required();
    sub_plot->add_option("--mode", o.mode, "exhaustive or sample:N")->capture_default_str();
    sub_plot->add_option("--seed", o.seed, "sampling seed")->capture_default_str();
    sub_plot->add_option("--surface", o.surface, "square|torus|cylinder-x|cylinder-y")
        ->capture_default_str();
    sub_plot->add_option("--union", o.union_window,
                         "emit the union of this many consecutive layers ending at k")
        ->capture_default_str();
    sub_plot->add_flag("--allow-large", o.allow_large, "override the 2^24 exhaustive budget");
    add_common(sub_plot);

    auto* sub_monna = app.add_subcommand("monna", "digit-reversal graph points as csv");
    add_machine(sub_monna);
    sub_monna->add_option("--k", o.k, "word length")->required();
    sub_monna->add_flag("--allow-large", o.allow_large, "override the 2^24 exhaustive budget");
    add_common(sub_monna);

    auto* sub_predict = app.add_subcommand("predict", "closed-form limit plot of z -> a*z + b");
    add_rat_pair(sub_predict);
    sub_predict->add_option("--points", o.points, "points csv for the svg overlay");
    sub_predict->add_option("--svg", o.svg, "write an svg overlaying the predicted cables");
    sub_predict->add_option("--res", o.res, "svg raster resolution")->capture_default_str();
    add_common(sub_predict);

    auto* sub_verify = app.add_subcommand("verify", "exact congruence check against a machine");
    add_machine(sub_verify);
    sub_verify->add_option("--p", o.p, "alphabet prime")->capture_default_str();
    sub_verify->add_option("--a", o.a, "claimed slope")->required();
    sub_verify->add_option("--b", o.b, "claimed offset")->required();
    sub_verify->add_option("--kmin", o.kmin, "first layer")->capture_default_str();
    sub_verify->add_option("--kmax", o.kmax, "last layer")->capture_default_str();
    add_common(sub_verify);

    auto* sub_detect = app.add_subcommand("detect", "search a plot for rational-slope lines");
    sub_detect->add_option("--points", o.points, "points csv")->required();
    sub_detect->add_option("--p", o.p, "alphabet prime")->capture_default_str();
    sub_detect->add_option("--max-num", o.max_num, "slope numerator bound")->capture_default_str();
    sub_detect->add_option("--max-den", o.max_den, "slope denominator bound")->capture_default_str();
    sub_detect->add_option("--tol", o.tol, "cluster tolerance, rational")->capture_default_str();
    sub_detect->add_option("--min-support", o.min_support, "report threshold, rational")
        ->capture_default_str();
    add_common(sub_detect);

    auto* sub_vdp = app.add_subcommand("vdp", "van der Put coefficients of a machine");
    add_machine(sub_vdp);
    sub_vdp->add_option("--mmax", o.mmax, "coefficients below this index")->capture_default_str();
    sub_vdp->add_option("--precision", o.precision, "working precision, digits")
        ->capture_default_str();
    add_common(sub_vdp);

    auto* sub_kernel = app.add_subcommand("kernel", "p-kernel finiteness probe of the b_m sequence");
    add_machine(sub_kernel);
    sub_kernel->add_option("--depth", o.depth, "max decimation depth J")->capture_default_str();
    sub_kernel->add_option("--prefix", o.prefix, "signature length L")->capture_default_str();
    sub_kernel->add_option("--precision", o.precision, "working precision, digits")
        ->capture_default_str();
    sub_kernel->add_option("--cmp", o.cmp, "compare precision, digits")->capture_default_str();
    add_common(sub_kernel);

    auto* sub_sq = app.add_subcommand("squaring", "growth of the squaring coefficient set");
    sub_sq->add_option("--M", o.M, "scan b_m below this bound")->capture_default_str();
    sub_sq->add_option("--p", o.p, "alphabet prime")->capture_default_str();
    add_common(sub_sq);

    auto* sub_export = app.add_subcommand("export", "convert a points csv to csv/pgm/svg");
    sub_export->add_option("--points", o.points, "points csv")->required();
    sub_export->add_option("--p", o.p, "alphabet prime")->capture_default_str();
    sub_export->add_option("--format", o.format, "csv|pgm|svg")->capture_default_str();
    sub_export->add_option("--res", o.res, "raster resolution")->capture_default_str();
    sub_export->add_option("--cable", o.cables, "overlay cable slope:intercept (svg)");
    add_common(sub_export);

    try {
        app.parse(argc, argv);
        return dispatch(app.get_subcommands().front()->get_name(), o, out);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const CodecError& e) {
        err << "machine file error: " << e.what() << "\n";
        return 2;
    } catch (const std::ios_base::failure& e) {
        err << "io error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    }
}

}  // namespace zplot
