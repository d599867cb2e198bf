#pragma once

#include <string>

#include "holoifs/maps.hpp"
#include "holoifs/symmetry.hpp"

namespace holoifs::cli {

/// Flat "key = value" text. Reals use %.17g, so equal inputs give
/// byte-identical output.
class ReportWriter {
public:
    explicit ReportWriter(const std::string& kind);

    void put(const std::string& key, const std::string& value);
    void put(const std::string& key, const char* value) { put(key, std::string(value)); }
    void put(const std::string& key, double value);
    void put(const std::string& key, Complex value);
    void put(const std::string& key, long long value);
    void put(const std::string& key, int value) { put(key, static_cast<long long>(value)); }
    void put(const std::string& key, std::size_t value) { put(key, static_cast<long long>(value)); }
    void put(const std::string& key, bool value) { put(key, std::string(value ? "true" : "false")); }
    void put(const std::string& key, const Word& value) { put(key, value.to_string()); }

    const std::string& str() const { return text_; }

private:
    std::string text_;
};

inline constexpr int kReportFormatVersion = 1;

std::string format_real(double v);
/// "re,im" with %.17g parts.
std::string format_complex(Complex z);

std::string shared_report(const SharedAttractorReport& rep, const std::string& label_g, const std::string& label_f);

}  // namespace holoifs::cli
