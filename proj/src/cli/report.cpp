#include "holoifs/cli/report.hpp"

#include <cstdio>

namespace holoifs::cli {

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_complex(Complex z) { return format_real(z.real()) + "," + format_real(z.imag()); }

ReportWriter::ReportWriter(const std::string& kind) {
    text_ = "# holoifs " + kind + " report\n";
    put("format_version", kReportFormatVersion);
}

void ReportWriter::put(const std::string& key, const std::string& value) { text_ += key + " = " + value + "\n"; }
void ReportWriter::put(const std::string& key, double value) { put(key, format_real(value)); }
void ReportWriter::put(const std::string& key, Complex value) { put(key, format_complex(value)); }
void ReportWriter::put(const std::string& key, long long value) { put(key, std::to_string(value)); }

std::string shared_report(const SharedAttractorReport& rep, const std::string& label_g, const std::string& label_f) {
    ReportWriter w("shared-attractor");
    w.put("system_g", label_g);
    w.put("system_f", label_f);
    w.put("verdict", to_string(rep.verdict));
    w.put("hausdorff", rep.hausdorff);
    w.put("epsilon_g", rep.epsilon_g);
    w.put("epsilon_f", rep.epsilon_f);
    w.put("ssc_g", rep.ssc_g);
    w.put("ssc_f", rep.ssc_f);
    w.put("ssc_both", rep.ssc_g && rep.ssc_f);
    // Preperiodicity and functional-equation entries are finite samples: evidence, not proof.
    w.put("evidence_kind", "sampled");
    w.put("prep_forward.passed", rep.prep_forward.passed);
    w.put("prep_forward.failed", rep.prep_forward.failed);
    w.put("prep_forward.max_orbit", rep.prep_forward.max_orbit);
    w.put("prep_backward.passed", rep.prep_backward.passed);
    w.put("prep_backward.failed", rep.prep_backward.failed);
    w.put("prep_backward.max_orbit", rep.prep_backward.max_orbit);
    w.put("spectrum.len_g", rep.spectrum_len_g);
    w.put("spectrum.len_f", rep.spectrum_len_f);
    w.put("spectrum_gf.count", rep.spectrum_matches_gf.size());
    w.put("spectrum_gf.unmatched", rep.spectrum_unmatched_gf);
    for (std::size_t k = 0; k < rep.spectrum_matches_gf.size(); ++k) {
        const auto& m = rep.spectrum_matches_gf[k];
        const std::string p = "spectrum_gf." + std::to_string(k);
        w.put(p + ".word", m.word);
        w.put(p + ".lambda", m.lambda);
        w.put(p + ".l", m.l);
    }
    w.put("spectrum_fg.count", rep.spectrum_matches_fg.size());
    w.put("spectrum_fg.unmatched", rep.spectrum_unmatched_fg);
    for (std::size_t k = 0; k < rep.spectrum_matches_fg.size(); ++k) {
        const auto& m = rep.spectrum_matches_fg[k];
        const std::string p = "spectrum_fg." + std::to_string(k);
        w.put(p + ".word", m.word);
        w.put(p + ".lambda", m.lambda);
        w.put(p + ".l", m.l);
    }
    w.put("min_depth", rep.min_depth);
    w.put("M", rep.M);
    w.put("rho", rep.rho);
    w.put("germ_radius", rep.germ_radius);
    w.put("s_F", rep.s_F);
    w.put("box_disks", rep.box_disks);
    w.put("functional.count", rep.functional_equations.size());
    w.put("functional.unmatched", rep.functional_unmatched);
    w.put("functional.max_residual", rep.functional_max_residual);
    for (std::size_t k = 0; k < rep.functional_equations.size(); ++k) {
        const auto& id = rep.functional_equations[k];
        const std::string p = "functional." + std::to_string(k);
        w.put(p + ".disk", id.disk);
        w.put(p + ".t", id.t);
        w.put(p + ".t_ref", id.t_ref);
        w.put(p + ".u", id.u);
        w.put(p + ".u_ref", id.u_ref);
        w.put(p + ".samples", id.samples);
        w.put(p + ".residual", id.residual);
    }
    w.put("notes.count", rep.notes.size());
    for (std::size_t k = 0; k < rep.notes.size(); ++k) w.put("notes." + std::to_string(k), rep.notes[k]);
    return w.str();
}

}  // namespace holoifs::cli
