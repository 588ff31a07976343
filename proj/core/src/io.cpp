#include "hlip/io.hpp"

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace hlip {

namespace {

constexpr const char* kGridMagic = "HLIPGRID";
constexpr const char* kCloudMagic = "HLIPCLOUD";
constexpr int kVersion = 1;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void put_f64(std::ostream& out, std::span<const double> v) {
    std::vector<unsigned char> bytes(v.size() * 8);
    for (std::size_t i = 0; i < v.size(); ++i) {
        const auto u = std::bit_cast<std::uint64_t>(v[i]);
        for (int b = 0; b < 8; ++b) bytes[i * 8 + static_cast<std::size_t>(b)] = static_cast<unsigned char>(u >> (8 * b));
    }
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<double> get_f64(std::istream& in, std::size_t count, const std::string& what) {
    std::vector<unsigned char> bytes(count * 8);
    in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (static_cast<std::size_t>(in.gcount()) != bytes.size()) throw FormatError(what + ": truncated payload");
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(bytes[i * 8 + static_cast<std::size_t>(b)]) << (8 * b);
        v[i] = std::bit_cast<double>(u);
    }
    return v;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw FormatError("cannot open " + path.string() + " for writing");
    return out;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FormatError("cannot open " + path.string());
    return in;
}

// Reads "key values..." and checks the key.
std::istringstream header_line(std::istream& in, const std::string& key, const std::string& what) {
    std::string line;
    if (!std::getline(in, line)) throw FormatError(what + ": missing header line '" + key + "'");
    std::istringstream ls(line);
    std::string k;
    ls >> k;
    if (k != key) throw FormatError(what + ": expected '" + key + "', found '" + k + "'");
    return ls;
}

void check_magic(std::istream& in, const char* magic, const std::string& what) {
    auto ls = header_line(in, magic, what);
    int version = 0;
    if (!(ls >> version) || version != kVersion) throw FormatError(what + ": unsupported version");
}

template <class T>
std::vector<T> read_list(std::istringstream& ls, std::size_t count, const std::string& what) {
    std::vector<T> v(count);
    for (auto& x : v)
        if (!(ls >> x)) throw FormatError(what + ": short header list");
    return v;
}

}  // namespace

void write_grid(const std::filesystem::path& path, const GridFunction& phi) {
    const GridSpec& g = phi.spec();
    auto out = open_out(path);
    out << kGridMagic << ' ' << kVersion << '\n' << "n " << g.n() << '\n' << "origin";
    for (int a = 0; a < g.dim(); ++a) out << ' ' << fmt(g.origin().c[a]);
    out << "\nspacing";
    for (int a = 0; a < g.dim(); ++a) out << ' ' << fmt(g.spacing(a));
    out << "\ncounts";
    for (int a = 0; a < g.dim(); ++a) out << ' ' << g.count(a);
    out << "\nmask " << (phi.has_boundary_mask() ? 1 : 0) << "\nend\n";
    put_f64(out, phi.values());
    if (phi.has_boundary_mask())
        out.write(reinterpret_cast<const char*>(phi.boundary_mask().data()),
                  static_cast<std::streamsize>(phi.boundary_mask().size()));
    if (!out) throw FormatError("write failed for " + path.string());
}

GridFunction read_grid(const std::filesystem::path& path) {
    const std::string what = "grid file " + path.string();
    auto in = open_in(path);
    check_magic(in, kGridMagic, what);
    int n = 0;
    if (!(header_line(in, "n", what) >> n)) throw FormatError(what + ": bad dimension");
    try {
        require_dimension(n);
    } catch (const PreconditionError& e) {
        throw FormatError(what + ": " + e.what());
    }
    const auto d = static_cast<std::size_t>(2 * n);
    auto ls = header_line(in, "origin", what);
    const auto origin = read_list<double>(ls, d, what);
    ls = header_line(in, "spacing", what);
    auto spacing = read_list<double>(ls, d, what);
    ls = header_line(in, "counts", what);
    auto counts = read_list<int>(ls, d, what);
    int has_mask = 0;
    if (!(header_line(in, "mask", what) >> has_mask)) throw FormatError(what + ": bad mask flag");
    header_line(in, "end", what);
    GridSpec spec(n, WPoint::from_coords(n, origin), std::move(spacing), std::move(counts));
    GridFunction phi(spec, get_f64(in, spec.size(), what));
    if (has_mask) {
        CellMask m(spec.size());
        in.read(reinterpret_cast<char*>(m.data()), static_cast<std::streamsize>(m.size()));
        if (static_cast<std::size_t>(in.gcount()) != m.size()) throw FormatError(what + ": truncated mask");
        phi.set_boundary_mask(std::move(m));
    }
    return phi;
}

void write_cloud(const std::filesystem::path& path, const BoundaryCloud& cloud) {
    auto out = open_out(path);
    const CloudMeta& m = cloud.meta();
    out << kCloudMagic << ' ' << kVersion << '\n'
        << "n " << cloud.n() << '\n'
        << "count " << cloud.size() << '\n'
        << "provenance " << m.provenance << '\n'
        << "lambda " << (m.lambda ? fmt(*m.lambda) : "none") << '\n'
        << "r0 " << (m.r0 ? fmt(*m.r0) : "none") << '\n'
        << "end\n";
    put_f64(out, cloud.raw());
    if (!out) throw FormatError("write failed for " + path.string());
}

BoundaryCloud read_cloud(const std::filesystem::path& path) {
    const std::string what = "cloud file " + path.string();
    auto in = open_in(path);
    check_magic(in, kCloudMagic, what);
    int n = 0;
    if (!(header_line(in, "n", what) >> n)) throw FormatError(what + ": bad dimension");
    try {
        require_dimension(n);
    } catch (const PreconditionError& e) {
        throw FormatError(what + ": " + e.what());
    }
    std::size_t count = 0;
    if (!(header_line(in, "count", what) >> count)) throw FormatError(what + ": bad count");
    CloudMeta meta;
    {
        auto ls = header_line(in, "provenance", what);
        std::string rest;
        std::getline(ls >> std::ws, rest);
        meta.provenance = rest;
    }
    const auto optional_value = [&](const char* key) -> std::optional<double> {
        auto ls = header_line(in, key, what);
        std::string tok;
        ls >> tok;
        if (tok == "none") return std::nullopt;
        try {
            return std::stod(tok);
        } catch (const std::exception&) {
            throw FormatError(what + ": bad value for " + key);
        }
    };
    meta.lambda = optional_value("lambda");
    meta.r0 = optional_value("r0");
    header_line(in, "end", what);
    const std::size_t rs = BoundaryCloud::record_size(n);
    const auto data = get_f64(in, count * rs, what);
    BoundaryCloud cloud(n, meta);
    cloud.reserve(count);
    for (std::size_t i = 0; i < count; ++i) cloud.push_record(std::span<const double>(data).subspan(i * rs, rs));
    return cloud;
}

void write_nodes_csv(const std::filesystem::path& path, const GridSpec& grid, std::span<const CsvColumn> columns) {
    for (const auto& c : columns)
        if (c.values.size() != grid.size()) throw PreconditionError("write_nodes_csv: column '" + c.name + "' has wrong size");
    auto out = open_out(path);
    const int n = grid.n();
    for (int j = 2; j <= n; ++j) out << 'x' << j << ',';
    for (int j = 1; j <= n; ++j) out << 'y' << j << ',';
    out << 't';
    for (const auto& c : columns) out << ',' << c.name;
    out << '\n';
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const WPoint w = grid.node(i);
        for (int a = 0; a < grid.dim(); ++a) out << (a ? "," : "") << fmt(w.c[a]);
        for (const auto& c : columns) out << ',' << fmt(c.values[i]);
        out << '\n';
    }
    if (!out) throw FormatError("write failed for " + path.string());
}

std::vector<double> mask_values(const CellMask& mask) { return {mask.begin(), mask.end()}; }

}  // namespace hlip
