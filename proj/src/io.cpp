#include "padic/io.hpp"

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace padic {

using json = nlohmann::ordered_json;

void atomic_write_text(const std::string& path, const std::string& contents) {
    namespace fs = std::filesystem;
    fs::path target(path);
    fs::path temp = target;
    temp += ".tmp";
    {
        std::ofstream out(temp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError(path, "cannot open for writing");
        out << contents;
        if (!out.flush()) throw IoError(path, "write failed");
    }
    std::error_code ec;
    fs::rename(temp, target, ec);
    if (ec) {
        fs::remove(temp, ec);
        throw IoError(path, "rename failed");
    }
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError(path, "cannot open for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

namespace {

json parse_document(const std::string& path, const char* expected_format) {
    json doc;
    try {
        doc = json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path, std::string("malformed JSON (") + e.what() + ")");
    }
    if (!doc.is_object() || doc.value("format", "") != expected_format)
        throw IoError(path, std::string("not a ") + expected_format + " document");
    return doc;
}

json grid_header(const char* format, Prime p, long r, long l) {
    json doc;
    doc["format"] = format;
    doc["p"] = p.value();
    doc["r"] = r;
    doc["l"] = l;
    return doc;
}

CosetGrid grid_from_header(const std::string& path, const json& doc) {
    try {
        return CosetGrid(Prime(doc.at("p").get<long>()), doc.at("r").get<long>(), doc.at("l").get<long>());
    } catch (const std::exception& e) {
        throw IoError(path, std::string("invalid window header (") + e.what() + ")");
    }
}

Rational rational_field(const std::string& path, const json& value) {
    try {
        if (value.is_string()) return parse_rational(value.get<std::string>());
        if (value.is_number_integer()) return Rational(value.get<long>());
        if (value.is_number_float()) {
            Rational q;
            mpq_set_d(q.get_mpq_t(), value.get<double>());
            return q;
        }
    } catch (const std::exception& e) {
        throw IoError(path, std::string("malformed rational (") + e.what() + ")");
    }
    throw IoError(path, "malformed rational field");
}

constexpr const char* kFunctionFormat = "pspec-function";
constexpr const char* kSpectrumFormat = "pspec-spectrum";
constexpr const char* kKernelFormat = "pspec-kernel";
constexpr const char* kBasisFormat = "pspec-basis";
constexpr const char* kSeriesFormat = "pspec-series";

}  // namespace

void write_function(const std::string& path, const ExactFunction& f) {
    json doc = grid_header(kFunctionFormat, f.grid().prime(), f.grid().ball_exponent(),
                           f.grid().constancy_exponent());
    doc["backend"] = "exact";
    json values = json::array();
    for (std::size_t m = 0; m < f.size(); ++m)
        values.push_back({to_string(f[m].rational_part()), to_string(f[m].surd_part())});
    doc["values"] = std::move(values);
    atomic_write_text(path, doc.dump(2) + "\n");
}

void write_function(const std::string& path, const ComplexFunction& f) {
    json doc = grid_header(kFunctionFormat, f.grid().prime(), f.grid().ball_exponent(),
                           f.grid().constancy_exponent());
    doc["backend"] = "float";
    json values = json::array();
    for (std::size_t m = 0; m < f.size(); ++m) values.push_back({f[m].real(), f[m].imag()});
    doc["values"] = std::move(values);
    atomic_write_text(path, doc.dump(2) + "\n");
}

LoadedFunction read_function(const std::string& path) {
    json doc = parse_document(path, kFunctionFormat);
    CosetGrid grid = grid_from_header(path, doc);
    const auto& values = doc.at("values");
    if (!values.is_array() || values.size() != grid.size())
        throw IoError(path, "value count does not match the window");
    std::string backend = doc.value("backend", "");
    if (backend == "exact") {
        std::vector<QuadScalar> out;
        out.reserve(grid.size());
        for (const auto& pair : values)
            out.emplace_back(grid.prime(), rational_field(path, pair.at(0)), rational_field(path, pair.at(1)));
        return ExactFunction(grid, std::move(out));
    }
    if (backend == "float") {
        std::vector<std::complex<double>> out;
        out.reserve(grid.size());
        for (const auto& pair : values)
            out.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
        return ComplexFunction(grid, std::move(out));
    }
    throw IoError(path, "unknown backend '" + backend + "'");
}

void write_spectrum(const std::string& path, const Spectrum& spectrum) {
    const FrequencyGrid& freq = spectrum.frequencies;
    json doc = grid_header(kSpectrumFormat, freq.prime(), freq.ball_exponent(), freq.constancy_exponent());
    doc["role"] = "frequencies";
    doc["backend"] = "float";
    json values = json::array();
    for (const auto& v : spectrum.values) values.push_back({v.real(), v.imag()});
    doc["values"] = std::move(values);
    atomic_write_text(path, doc.dump(2) + "\n");
}

Spectrum read_spectrum(const std::string& path) {
    json doc = parse_document(path, kSpectrumFormat);
    CosetGrid grid = grid_from_header(path, doc);
    FrequencyGrid freq(grid);
    const auto& values = doc.at("values");
    if (!values.is_array() || values.size() != freq.size())
        throw IoError(path, "value count does not match the window");
    std::vector<std::complex<double>> out;
    out.reserve(freq.size());
    for (const auto& pair : values) out.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    return Spectrum(freq, std::move(out));
}

void write_kernel_spec(const std::string& path, const KernelSpec& spec) {
    json doc;
    doc["format"] = kKernelFormat;
    doc["p"] = spec.prime().value();
    doc["gamma_min"] = spec.gamma_min();
    doc["gamma_max"] = spec.gamma_max();
    json scales = json::array();
    for (const auto& [gamma, scale] : spec.scales()) {
        json entry;
        entry["gamma"] = gamma;
        entry["default"] = to_string(scale.default_value);
        json overrides = json::array();
        for (const auto& [n, value] : scale.overrides)
            overrides.push_back({{"n", to_string(n)}, {"value", to_string(value)}});
        entry["overrides"] = std::move(overrides);
        scales.push_back(std::move(entry));
    }
    doc["scales"] = std::move(scales);
    atomic_write_text(path, doc.dump(2) + "\n");
}

KernelSpec read_kernel_spec(const std::string& path) {
    json doc = parse_document(path, kKernelFormat);
    try {
        KernelSpec spec(Prime(doc.at("p").get<long>()), doc.at("gamma_min").get<long>(),
                        doc.at("gamma_max").get<long>());
        for (const auto& entry : doc.value("scales", json::array())) {
            long gamma = entry.at("gamma").get<long>();
            spec.set_scale_default(gamma, rational_field(path, entry.at("default")));
            for (const auto& item : entry.value("overrides", json::array()))
                spec.set_override(gamma, rational_field(path, item.at("n")),
                                  rational_field(path, item.at("value")));
        }
        return spec;
    } catch (const nlohmann::json::exception& e) {
        throw IoError(path, std::string("malformed kernel document (") + e.what() + ")");
    } catch (const std::invalid_argument& e) {
        throw IoError(path, std::string("invalid kernel spec (") + e.what() + ")");
    }
}

std::string basis_kind_name(BasisKind kind) {
    switch (kind) {
        case BasisKind::Detail: return "detail";
        case BasisKind::Orthonormal: return "orthonormal";
        case BasisKind::Wavelet: return "wavelet";
        case BasisKind::Character: return "character";
        case BasisKind::Constant: return "constant";
    }
    return "?";
}

namespace {

bool exactly_representable(BasisKind kind) {
    return kind == BasisKind::Constant || kind == BasisKind::Orthonormal || kind == BasisKind::Detail;
}

json element_record(const BasisSet& basis, const BasisElement& element) {
    json record;
    record["kind"] = basis_kind_name(element.kind);
    record["gamma"] = element.gamma;
    record["n"] = to_string(element.offset);
    record["label"] = element.label;
    if (element.eigenvalue)
        record["eigenvalue"] = *element.eigenvalue;
    else
        record["eigenvalue"] = nullptr;
    json values = json::array();
    if (exactly_representable(element.kind)) {
        ExactFunction f = materialize_exact(basis, element);
        for (std::size_t m = 0; m < f.size(); ++m)
            values.push_back({to_string(f[m].rational_part()), to_string(f[m].surd_part())});
    } else {
        ComplexFunction f = materialize_complex(basis, element);
        for (std::size_t m = 0; m < f.size(); ++m) values.push_back({f[m].real(), f[m].imag()});
    }
    record["values"] = std::move(values);
    return record;
}

json basis_header(const BasisSet& basis) {
    json doc = grid_header(kBasisFormat, basis.grid.prime(), basis.grid.ball_exponent(),
                           basis.grid.constancy_exponent());
    doc["sign"] = basis.sign == KSign::Plus ? "+" : "-";
    doc["kind"] = basis_kind_name(basis.kind);
    return doc;
}

std::string csv_eigenvalue(const BasisElement& element) {
    return element.eigenvalue ? format_double(*element.eigenvalue) : std::string();
}

}  // namespace

void write_basis_json(const std::string& path, const BasisSet& basis) {
    json doc = basis_header(basis);
    json elements = json::array();
    for (const auto& element : basis.elements) elements.push_back(element_record(basis, element));
    doc["elements"] = std::move(elements);
    atomic_write_text(path, doc.dump(2) + "\n");
}

void write_basis_csv(const std::string& path, const BasisSet& basis) {
    std::ostringstream out;
    out << "kind,gamma,n,label,eigenvalue";
    for (std::size_t m = 0; m < basis.grid.size(); ++m)
        out << ",f(" << to_string(basis.grid.representative(m)) << ")";
    out << "\n";
    for (const auto& element : basis.elements) {
        out << basis_kind_name(element.kind) << "," << element.gamma << "," << to_string(element.offset)
            << "," << element.label << "," << csv_eigenvalue(element);
        // One cell per coset: "a;b" rational pair for exact kinds, "re;im" floats otherwise.
        if (exactly_representable(element.kind)) {
            ExactFunction f = materialize_exact(basis, element);
            for (std::size_t m = 0; m < f.size(); ++m)
                out << "," << to_string(f[m].rational_part()) << ";" << to_string(f[m].surd_part());
        } else {
            ComplexFunction f = materialize_complex(basis, element);
            for (std::size_t m = 0; m < f.size(); ++m)
                out << "," << format_double(f[m].real()) << ";" << format_double(f[m].imag());
        }
        out << "\n";
    }
    atomic_write_text(path, out.str());
}

void write_eigenvalue_table_csv(const std::string& path, const BasisSet& basis) {
    std::ostringstream out;
    out << "kind,gamma,n,label,eigenvalue\n";
    for (const auto& element : basis.elements)
        out << basis_kind_name(element.kind) << "," << element.gamma << "," << to_string(element.offset)
            << "," << element.label << "," << csv_eigenvalue(element) << "\n";
    atomic_write_text(path, out.str());
}

void write_eigenvalue_table_json(const std::string& path, const BasisSet& basis) {
    json doc = basis_header(basis);
    json elements = json::array();
    for (const auto& element : basis.elements) {
        json record;
        record["kind"] = basis_kind_name(element.kind);
        record["gamma"] = element.gamma;
        record["n"] = to_string(element.offset);
        record["label"] = element.label;
        if (element.eigenvalue)
            record["eigenvalue"] = *element.eigenvalue;
        else
            record["eigenvalue"] = nullptr;
        elements.push_back(std::move(record));
    }
    doc["elements"] = std::move(elements);
    atomic_write_text(path, doc.dump(2) + "\n");
}

void write_snapshots_csv(const std::string& path, const EvolutionRun& run) {
    std::ostringstream out;
    out << "t";
    for (std::size_t m = 0; m < run.grid.size(); ++m)
        out << ",f(" << to_string(run.grid.representative(m)) << ")";
    out << "\n";
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        out << format_double(run.times[i]);
        for (std::size_t m = 0; m < run.grid.size(); ++m)
            out << "," << format_double(run.snapshots[i][m].real());
        out << "\n";
    }
    atomic_write_text(path, out.str());
}

void write_snapshots_json(const std::string& path, const EvolutionRun& run) {
    json doc = grid_header(kSeriesFormat, run.grid.prime(), run.grid.ball_exponent(),
                           run.grid.constancy_exponent());
    doc["role"] = "snapshots";
    json rows = json::array();
    for (std::size_t i = 0; i < run.times.size(); ++i) {
        json row;
        row["t"] = run.times[i];
        json values = json::array();
        for (std::size_t m = 0; m < run.grid.size(); ++m)
            values.push_back({run.snapshots[i][m].real(), run.snapshots[i][m].imag()});
        row["values"] = std::move(values);
        rows.push_back(std::move(row));
    }
    doc["rows"] = std::move(rows);
    atomic_write_text(path, doc.dump(2) + "\n");
}

void write_survival_csv(const std::string& path, const EvolutionRun& run,
                        const std::vector<double>& series) {
    std::ostringstream out;
    out << "t,s\n";
    for (std::size_t i = 0; i < run.times.size(); ++i)
        out << format_double(run.times[i]) << "," << format_double(series[i]) << "\n";
    atomic_write_text(path, out.str());
}

void write_survival_json(const std::string& path, const EvolutionRun& run,
                         const std::vector<double>& series) {
    json doc = grid_header(kSeriesFormat, run.grid.prime(), run.grid.ball_exponent(),
                           run.grid.constancy_exponent());
    doc["role"] = "survival";
    json rows = json::array();
    for (std::size_t i = 0; i < run.times.size(); ++i)
        rows.push_back({{"t", run.times[i]}, {"s", series[i]}});
    doc["rows"] = std::move(rows);
    atomic_write_text(path, doc.dump(2) + "\n");
}

namespace {

// Minimal self-contained line plot: one polyline per series on a fixed
// 640x400 canvas with a plain frame. Enough to eyeball decay curves.
std::string svg_plot(const std::vector<double>& times, const std::vector<std::vector<double>>& series,
                     const std::vector<std::string>& labels) {
    const double width = 640, height = 400, margin = 48;
    double tmin = times.empty() ? 0 : times.front(), tmax = times.empty() ? 1 : times.back();
    if (tmax <= tmin) tmax = tmin + 1;
    double vmin = 0, vmax = 0;
    for (const auto& s : series)
        for (double v : s) {
            vmin = std::min(vmin, v);
            vmax = std::max(vmax, v);
        }
    if (vmax <= vmin) vmax = vmin + 1;
    auto x_of = [&](double t) { return margin + (t - tmin) / (tmax - tmin) * (width - 2 * margin); };
    auto y_of = [&](double v) { return height - margin - (v - vmin) / (vmax - vmin) * (height - 2 * margin); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 640 400\">\n"
        << "<rect width=\"640\" height=\"400\" fill=\"white\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << height - margin << "\" x2=\"" << width - margin
        << "\" y2=\"" << height - margin << "\" stroke=\"black\"/>\n"
        << "<line x1=\"" << margin << "\" y1=\"" << margin << "\" x2=\"" << margin << "\" y2=\""
        << height - margin << "\" stroke=\"black\"/>\n";
    for (std::size_t s = 0; s < series.size(); ++s) {
        out << "<polyline fill=\"none\" stroke=\"" << palette[s % 8] << "\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < times.size(); ++i)
            out << format_double(x_of(times[i])) << "," << format_double(y_of(series[s][i])) << " ";
        out << "\"/>\n";
        out << "<text x=\"" << width - margin + 4 << "\" y=\""
            << format_double(y_of(series[s].empty() ? 0 : series[s].back())) << "\" font-size=\"10\">"
            << labels[s] << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

void write_snapshots_svg(const std::string& path, const EvolutionRun& run) {
    std::vector<std::vector<double>> series(run.grid.size(), std::vector<double>(run.times.size()));
    std::vector<std::string> labels(run.grid.size());
    for (std::size_t m = 0; m < run.grid.size(); ++m) {
        labels[m] = "f(" + to_string(run.grid.representative(m)) + ")";
        for (std::size_t i = 0; i < run.times.size(); ++i) series[m][i] = run.snapshots[i][m].real();
    }
    atomic_write_text(path, svg_plot(run.times, series, labels));
}

void write_survival_svg(const std::string& path, const EvolutionRun& run,
                        const std::vector<double>& series) {
    atomic_write_text(path, svg_plot(run.times, {series}, {"s(t)"}));
}

}  // namespace padic
