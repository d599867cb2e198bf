#include "holoifs/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "holoifs/attractor.hpp"
#include "holoifs/cli/config.hpp"
#include "holoifs/cli/report.hpp"
#include "holoifs/dynamics.hpp"
#include "holoifs/errors.hpp"
#include "holoifs/koenigs.hpp"
#include "holoifs/symmetry.hpp"

namespace holoifs::cli {

namespace {

void write_file(const std::string& path, const std::string& data) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError(path + ": cannot open for writing");
    f << data;
    if (!f) throw ConfigError(path + ": write failed");
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    return out;
}

Complex parse_complex(const std::string& s, const std::string& what) {
    const auto parts = split(s, s.find(':') != std::string::npos ? ':' : ',');
    if (parts.empty() || parts.size() > 2) throw ConfigError(what + ": expected re or re,im, got '" + s + "'");
    return {parse_number(parts[0], what), parts.size() == 2 ? parse_number(parts[1], what) : 0.0};
}

Word parse_word(const std::string& s, int alphabet) {
    std::vector<int> letters;
    for (const auto& tok : split(s, ',')) {
        if (tok.empty()) continue;
        const double v = parse_number(tok, "--word");
        if (v != std::floor(v) || v < 0 || v >= alphabet)
            throw ConfigError("--word: letter '" + tok + "' outside alphabet of size " + std::to_string(alphabet));
        letters.push_back(static_cast<int>(v));
    }
    return Word(std::move(letters), alphabet);
}

std::vector<Disk> parse_disks(const std::string& s) {
    std::vector<Disk> out;
    for (const auto& rec : split(s, ';')) {
        if (rec.empty()) continue;
        const auto f = split(rec, ',');
        if (f.size() != 3) throw ConfigError("--osc-disks: expected cx,cy,r records separated by ';'");
        const double r = parse_number(f[2], "--osc-disks radius");
        if (!(r > 0.0)) throw ConfigError("--osc-disks: radius must be positive");
        out.emplace_back(Complex(parse_number(f[0], "--osc-disks cx"), parse_number(f[1], "--osc-disks cy")), r);
    }
    return out;
}

std::string label_of(const SystemConfig& cfg, const std::string& path) { return cfg.label.empty() ? path : cfg.label; }

}  // namespace

std::string render_pgm(const std::vector<Complex>& points, int pixels) {
    if (pixels < 1) throw ConfigError("--pixels must be positive");
    double xmin = points.front().real(), xmax = xmin, ymin = points.front().imag(), ymax = ymin;
    for (const Complex& p : points) {
        xmin = std::min(xmin, p.real());
        xmax = std::max(xmax, p.real());
        ymin = std::min(ymin, p.imag());
        ymax = std::max(ymax, p.imag());
    }
    double side = std::max({xmax - xmin, ymax - ymin, 1e-12});
    const double cx = 0.5 * (xmin + xmax), cy = 0.5 * (ymin + ymax);
    side *= 1.1;
    const double x0 = cx - 0.5 * side, ytop = cy + 0.5 * side;
    const auto n = static_cast<std::size_t>(pixels);
    std::string img(n * n, static_cast<char>(255));
    for (const Complex& p : points) {
        const auto col = std::min<std::size_t>(n - 1, static_cast<std::size_t>((p.real() - x0) / side * pixels));
        const auto row = std::min<std::size_t>(n - 1, static_cast<std::size_t>((ytop - p.imag()) / side * pixels));
        img[row * n + col] = 0;
    }
    return "P5\n" + std::to_string(pixels) + " " + std::to_string(pixels) + "\n255\n" + img;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Holomorphic IFS toolkit: attractors, separation certificates, symmetry germs"};
    app.name("holoifs");
    app.require_subcommand(1);

    double epsilon = 1e-3;
    std::uint64_t word_cap = 10'000'000;
    std::string cfg_a, cfg_b, out_csv, out_pgm, report_path, osc_disks, point = "0", word, coeffs, csv_a, csv_b;
    int pixels = 512, max_len = 4, l = 2, order = 32, samples = 64;
    double lambda = 0.5, lambda_im = 0.0, tol = 1e-9;
    SharedOptions shared;
    int M = 0;

    auto add_eps = [&](CLI::App* s) {
        s->add_option("--epsilon", epsilon, "Net covering radius")->capture_default_str()->check(CLI::PositiveNumber);
        s->add_option("--word-cap", word_cap, "Maximum number of words enumerated")->capture_default_str();
    };

    auto* attractor = app.add_subcommand("attractor", "Compute an attractor net");
    attractor->add_option("config", cfg_a, "System config file")->required();
    add_eps(attractor);
    attractor->add_option("--out-csv", out_csv, "Write the net as re,im lines (default: stdout)");
    attractor->add_option("--out-pgm", out_pgm, "Write a P5 raster of the net");
    attractor->add_option("--pixels", pixels, "Raster side length")->capture_default_str();

    auto* check = app.add_subcommand("check", "Separation certificates and radii");
    check->add_option("config", cfg_a, "System config file")->required();
    add_eps(check);
    check->add_option("--osc-disks", osc_disks, "Candidate open set: cx,cy,r;cx,cy,r;...");

    auto* spectrum_cmd = app.add_subcommand("spectrum", "Multiplier spectrum");
    spectrum_cmd->add_option("config", cfg_a, "System config file")->required();
    spectrum_cmd->add_option("--max-len", max_len, "Longest word")->capture_default_str();
    spectrum_cmd->add_option("--word-cap", word_cap, "Maximum number of words enumerated")->capture_default_str();

    auto* sh = app.add_subcommand("shared", "Decide whether two systems share their attractor");
    sh->add_option("config_g", cfg_a, "Config of G")->required();
    sh->add_option("config_f", cfg_b, "Config of F")->required();
    add_eps(sh);
    sh->add_option("--report", report_path, "Write the report here (default: stdout)");
    sh->add_option("--prep-word", shared.prep_word, "Longest word for the preperiodicity cross-check")->capture_default_str();
    sh->add_option("--prep-max-orbit", shared.prep_max_orbit, "Bound on preperiod + period")->capture_default_str();
    sh->add_option("--orbit-tol", shared.orbit_tol, "Periodicity tolerance")->capture_default_str();
    sh->add_option("--max-iter", shared.orbit_max_iter, "Orbit steps before giving up")->capture_default_str();
    sh->add_option("--spectrum-len", shared.spectrum_len, "Word length of the compared spectra")->capture_default_str();
    sh->add_option("--spectrum-budget", shared.spectrum_word_budget, "Word budget of the reference spectrum")
        ->capture_default_str();
    sh->add_option("--l-max", shared.l_max, "Largest exponent in spectrum matching")->capture_default_str();
    sh->add_option("--M", M, "Functional-equation word length (default: min_depth + 1, auto-extended)");
    sh->add_option("--func-tol", shared.func_tol, "Functional-equation residual tolerance")->capture_default_str();
    sh->add_option("--func-samples", shared.func_samples, "Sample points per disk")->capture_default_str();

    auto* roots = app.add_subcommand("roots", "Functional roots of R(z) = lambda z + c_2 z^2 + ...");
    roots->add_option("--lambda", lambda, "Real part of the multiplier")->capture_default_str();
    roots->add_option("--lambda-im", lambda_im, "Imaginary part of the multiplier")->capture_default_str();
    roots->add_option("--coeffs", coeffs, "c_2,c_3,... (each re or re:im)");
    roots->add_option("--l", l, "Exponent")->capture_default_str();
    roots->add_option("--order", order, "Series order")->capture_default_str();

    auto* sym = app.add_subcommand("symmetry", "Build and verify one symmetry germ");
    sym->add_option("config_g", cfg_a, "Config of G")->required();
    sym->add_option("config_f", cfg_b, "Config of F")->required();
    add_eps(sym);
    sym->add_option("--point", point, "Base point re,im")->capture_default_str();
    sym->add_option("--word", word, "Word of G, letters separated by commas")->required();
    sym->add_option("--samples", samples, "Samples per direction")->capture_default_str();
    sym->add_option("--tol", tol, "Residual tolerance")->capture_default_str();

    auto* haus = app.add_subcommand("hausdorff", "Hausdorff distance between two CSV point sets");
    haus->add_option("a", csv_a, "CSV file")->required();
    haus->add_option("b", csv_b, "CSV file")->required();

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitPass : kExitConfig;
    }

    try {
        const NetOptions net_options{word_cap};
        if (attractor->parsed()) {
            const auto cfg = load_config(cfg_a);
            const auto net = compute_net(cfg.system, epsilon, net_options);
            const std::string csv = to_csv(net.points());
            if (out_csv.empty()) {
                out << csv;
            } else {
                write_file(out_csv, csv);
                ReportWriter w("attractor");
                w.put("system", label_of(cfg, cfg_a));
                w.put("points", net.size());
                w.put("epsilon", net.epsilon());
                w.put("depth", net.depth());
                w.put("degenerate", net.degenerate());
                out << w.str();
            }
            if (!out_pgm.empty()) write_file(out_pgm, render_pgm(net.points(), pixels));
            return kExitPass;
        }
        if (check->parsed()) {
            const auto cfg = load_config(cfg_a);
            const auto net = compute_net(cfg.system, epsilon, net_options);
            const auto ssc = certify_ssc(cfg.system, net);
            ReportWriter w("check");
            w.put("system", label_of(cfg, cfg_a));
            w.put("net.points", net.size());
            w.put("net.epsilon", net.epsilon());
            w.put("ssc.pairwise_distance", ssc.pairwise_distance);
            w.put("ssc.lipschitz", ssc.lipschitz);
            w.put("ssc.margin", ssc.margin);
            w.put("ssc.certified_distance", ssc.certified_distance());
            w.put("ssc.valid", ssc.valid());
            if (ssc.valid()) {
                const auto rho = rho_radius(cfg.system, net);
                w.put("rho_h", rho.rho_h);
                w.put("rho_G", rho.rho_G);
                w.put("rho_L", rho.rho_L);
            }
            bool ok = ssc.valid();
            if (!osc_disks.empty()) {
                const auto osc = certify_strong_osc(cfg.system, parse_disks(osc_disks), net);
                w.put("osc.meets_attractor", osc.meets_attractor);
                w.put("osc.images_inside", osc.images_inside);
                w.put("osc.images_disjoint", osc.images_disjoint);
                w.put("osc.pairwise_distance", osc.pairwise_distance);
                w.put("osc.valid", osc.valid());
                ok = osc.valid();
            }
            out << w.str();
            return ok ? kExitPass : kExitFail;
        }
        if (spectrum_cmd->parsed()) {
            const auto cfg = load_config(cfg_a);
            const auto s = spectrum(cfg.system, max_len, word_cap);
            ReportWriter w("spectrum");
            w.put("system", label_of(cfg, cfg_a));
            w.put("max_len", s.max_word_length);
            w.put("entries", s.entries.size());
            for (std::size_t k = 0; k < s.entries.size(); ++k) {
                const std::string p = "entry." + std::to_string(k);
                w.put(p + ".word", s.entries[k].word);
                w.put(p + ".point", s.entries[k].point);
                w.put(p + ".multiplier", s.entries[k].multiplier);
            }
            out << w.str();
            return kExitPass;
        }
        if (sh->parsed()) {
            const auto g = load_config(cfg_a);
            const auto f = load_config(cfg_b);
            shared.epsilon = epsilon;
            shared.net.word_cap = word_cap;
            if (M > 0) shared.M = M;
            const auto rep = shared_attractor(g.system, f.system, shared);
            const std::string text = shared_report(rep, label_of(g, cfg_a), label_of(f, cfg_b));
            if (report_path.empty())
                out << text;
            else
                write_file(report_path, text);
            switch (rep.verdict) {
                case Verdict::Shared: return kExitPass;
                case Verdict::NotShared: return kExitFail;
                case Verdict::Inconclusive: return kExitInconclusive;
            }
            return kExitInconclusive;
        }
        if (roots->parsed()) {
            std::vector<Complex> c{Complex(lambda, lambda_im)};
            for (const auto& tok : split(coeffs, ','))
                if (!tok.empty()) c.push_back(parse_complex(tok, "--coeffs"));
            const auto R = PowerSeriesGerm::from_coefficients(c);
            const auto germs = functional_roots(R, l);
            ReportWriter w("roots");
            w.put("l", l);
            w.put("count", germs.size());
            for (std::size_t k = 0; k < germs.size(); ++k) {
                const std::string p = "root." + std::to_string(k);
                w.put(p + ".sample_radius", germs[k].sample_radius());
                const int shown = std::min(order, germs[k].order());
                for (int n = 1; n <= shown; ++n) w.put(p + ".c" + std::to_string(n), germs[k].coefficient(n));
            }
            out << w.str();
            return kExitPass;
        }
        if (sym->parsed()) {
            const auto g = load_config(cfg_a);
            const auto f = load_config(cfg_b);
            const auto G = analyze(g.system, epsilon, net_options);
            const auto F = analyze(f.system, epsilon, net_options);
            const SystemPair pair(G, F);
            const auto germ = build_symmetry(pair, parse_complex(point, "--point"),
                                             parse_word(word, static_cast<int>(g.system.size())));
            const auto chk = verify_symmetry(germ, pair, static_cast<std::size_t>(samples), tol);
            ReportWriter w("symmetry");
            w.put("word_g", germ.word_g);
            w.put("word_f", germ.word_f);
            w.put("base", germ.base);
            w.put("radius", germ.radius);
            w.put("derivative", germ.derivative);
            w.put("image", germ.image);
            w.put("sandwich_ok", germ.sandwich_ok);
            w.put("forward.samples", chk.forward_samples);
            w.put("forward.residual", chk.forward_residual);
            w.put("forward.allowance", chk.forward_allowance);
            w.put("backward.samples", chk.backward_samples);
            w.put("backward.residual", chk.backward_residual);
            w.put("backward.allowance", chk.backward_allowance);
            w.put("passed", chk.passed());
            out << w.str();
            return chk.passed() ? kExitPass : kExitFail;
        }
        if (haus->parsed()) {
            const auto a = read_csv(csv_a);
            const auto b = read_csv(csv_b);
            ReportWriter w("hausdorff");
            w.put("hausdorff", hausdorff(a, b));
            out << w.str();
            return kExitPass;
        }
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const BudgetExceeded& e) {
        err << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "inconclusive: " << e.what() << "\n";
        return kExitInconclusive;
    }
    return kExitConfig;
}

}  // namespace holoifs::cli
