#include "vsh/io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "vsh/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "vsf-1 writer assumes a little-endian host");

namespace vsh {

namespace detail {

namespace {
const char* kB64 =
    "ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
}

std::string base64_encode(const unsigned char* data, size_t n) {
    std::string out;
    out.reserve((n + 2) / 3 * 4);
    for (size_t i = 0; i < n; i += 3) {
        unsigned v = data[i] << 16;
        if (i + 1 < n) v |= data[i + 1] << 8;
        if (i + 2 < n) v |= data[i + 2];
        out.push_back(kB64[(v >> 18) & 63]);
        out.push_back(kB64[(v >> 12) & 63]);
        out.push_back(i + 1 < n ? kB64[(v >> 6) & 63] : '=');
        out.push_back(i + 2 < n ? kB64[v & 63] : '=');
    }
    return out;
}

std::vector<unsigned char> base64_decode(const std::string& s) {
    auto val = [](char c) -> int {
        if (c >= 'A' && c <= 'Z') return c - 'A';
        if (c >= 'a' && c <= 'z') return c - 'a' + 26;
        if (c >= '0' && c <= '9') return c - '0' + 52;
        if (c == '+') return 62;
        if (c == '/') return 63;
        if (c == '=') return -1;
        throw LayoutError("vsf-1: invalid base64 character in \"data\"");
    };
    std::vector<unsigned char> out;
    out.reserve(s.size() / 4 * 3);
    unsigned buf = 0;
    int bits = 0;
    for (char c : s) {
        if (c == '\n' || c == '\r') continue;
        int v = val(c);
        if (v < 0) break;
        buf = (buf << 6) | static_cast<unsigned>(v);
        bits += 6;
        if (bits >= 8) {
            bits -= 8;
            out.push_back(static_cast<unsigned char>((buf >> bits) & 0xff));
        }
    }
    return out;
}

} // namespace detail

namespace {

nlohmann::json grid_header(const SphericalGrid& g) {
    if (!g.is_ball())
        throw LayoutError("vsf-1 stores ball grids only (annulus grids are "
                          "internal test constructs)");
    return {{"l_max", g.l_max()},
            {"n_r", g.n_r()},
            {"r_max", g.r_max()},
            {"n_theta", g.n_theta()},
            {"n_phi", g.n_phi()}};
}

std::string encode_coef(std::span<const cplx> c) {
    std::vector<unsigned char> bytes(c.size() * 2 * sizeof(double));
    size_t off = 0;
    for (const cplx& v : c) {
        double re = v.real(), im = v.imag();
        std::memcpy(bytes.data() + off, &re, sizeof(double));
        off += sizeof(double);
        std::memcpy(bytes.data() + off, &im, sizeof(double));
        off += sizeof(double);
    }
    return detail::base64_encode(bytes.data(), bytes.size());
}

void decode_coef(const std::string& b64, std::span<cplx> c) {
    auto bytes = detail::base64_decode(b64);
    if (bytes.size() != c.size() * 2 * sizeof(double))
        throw LayoutError("vsf-1: \"data\" length does not match grid header");
    size_t off = 0;
    for (cplx& v : c) {
        double re, im;
        std::memcpy(&re, bytes.data() + off, sizeof(double));
        off += sizeof(double);
        std::memcpy(&im, bytes.data() + off, sizeof(double));
        off += sizeof(double);
        v = {re, im};
    }
}

void write_doc(const std::string& path, nlohmann::json doc) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw LayoutError("cannot open for writing: " + path);
    os << doc.dump() << "\n";
}

} // namespace

void save_field(const std::string& path, const ScalarField& f) {
    nlohmann::json doc{{"format", "vsf-1"},
                       {"grid", grid_header(*f.grid())},
                       {"kind", "scalar"},
                       {"data", encode_coef(f.coef())}};
    write_doc(path, std::move(doc));
}

void save_field(const std::string& path, const VectorField& f) {
    nlohmann::json doc{{"format", "vsf-1"},
                       {"grid", grid_header(*f.grid())},
                       {"kind", "vector"},
                       {"data", encode_coef(f.coef())}};
    write_doc(path, std::move(doc));
}

FieldVariant load_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw LayoutError("cannot open: " + path);
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw LayoutError(std::string("vsf-1: not valid JSON: ") + e.what());
    }
    for (const char* key : {"format", "grid", "kind", "data"})
        if (!doc.contains(key))
            throw LayoutError(std::string("vsf-1: missing key \"") + key +
                              "\"");
    if (doc["format"] != "vsf-1")
        throw LayoutError("vsf-1: unsupported value for key \"format\"");
    const auto& gh = doc["grid"];
    for (const char* key : {"l_max", "n_r", "r_max", "n_theta", "n_phi"})
        if (!gh.contains(key))
            throw LayoutError(std::string("vsf-1: missing grid key \"") + key +
                              "\"");
    auto grid = SphericalGrid::make_ball(gh["l_max"].get<int>(),
                                         gh["n_r"].get<int>(),
                                         gh["r_max"].get<double>());
    if (grid->n_theta() != gh["n_theta"].get<int>() ||
        grid->n_phi() != gh["n_phi"].get<int>())
        throw LayoutError("vsf-1: grid key \"n_theta\"/\"n_phi\" does not "
                          "match the angular rule for this l_max");
    const std::string kind = doc["kind"].get<std::string>();
    if (kind == "scalar") {
        ScalarField f(grid);
        decode_coef(doc["data"].get<std::string>(), f.coef());
        return f;
    }
    if (kind == "vector") {
        VectorField f(grid);
        decode_coef(doc["data"].get<std::string>(), f.coef());
        return f;
    }
    throw LayoutError("vsf-1: unsupported value for key \"kind\"");
}

} // namespace vsh
