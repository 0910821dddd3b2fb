#include "fks/snapshot.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>
#include <stdexcept>

namespace fks {

namespace {

constexpr std::uint8_t kMagic[4] = {'F', 'K', 'S', '1'};

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void put_f64(std::vector<std::uint8_t>& out, double d) {
    const auto bits = std::bit_cast<std::uint64_t>(d);
    for (int i = 0; i < 8; ++i) out.push_back(static_cast<std::uint8_t>(bits >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= static_cast<std::uint32_t>(p[i]) << (8 * i);
    return v;
}

double get_f64(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(v);
}

} // namespace

PhysicalField Snapshot::physical() const { return PhysicalField(Grid(n), values); }

std::vector<std::uint8_t> encode_snapshot(const Snapshot& s) {
    if (s.values.size() != static_cast<size_t>(s.n)) {
        throw std::invalid_argument("snapshot value count does not match n");
    }
    nlohmann::ordered_json header;
    header["n"] = s.n;
    header["t"] = s.t;
    header["eps"] = s.params.eps;
    header["gamma"] = s.params.gamma;
    header["delta"] = s.params.delta;
    header["variant"] = std::string(to_string(s.params.variant));
    const std::string text = header.dump();

    std::vector<std::uint8_t> out;
    out.reserve(8 + text.size() + 8 * s.values.size());
    for (auto b : kMagic) out.push_back(b);
    put_u32(out, static_cast<std::uint32_t>(text.size()));
    for (char c : text) out.push_back(static_cast<std::uint8_t>(c));
    for (double v : s.values) put_f64(out, v);
    return out;
}

Snapshot decode_snapshot(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 8 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
        throw std::runtime_error("not an FKS1 snapshot (bad magic)");
    }
    const std::uint32_t hlen = get_u32(bytes.data() + 4);
    if (bytes.size() < 8 + static_cast<size_t>(hlen)) throw std::runtime_error("truncated snapshot header");
    const std::string text(bytes.begin() + 8, bytes.begin() + 8 + hlen);

    Snapshot s;
    try {
        const auto header = nlohmann::json::parse(text);
        s.n = header.at("n").get<int>();
        s.t = header.at("t").get<double>();
        s.params.eps = header.at("eps").get<double>();
        s.params.gamma = header.at("gamma").get<double>();
        s.params.delta = header.at("delta").get<double>();
        s.params.variant = parse_variant(header.at("variant").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed snapshot header: ") + e.what());
    }
    if (s.n <= 0) throw std::runtime_error("snapshot header has non-positive n");
    const size_t payload = 8 * static_cast<size_t>(s.n);
    if (bytes.size() != 8 + hlen + payload) {
        throw std::runtime_error("snapshot payload length does not match n = " + std::to_string(s.n));
    }
    s.values.resize(static_cast<size_t>(s.n));
    const std::uint8_t* p = bytes.data() + 8 + hlen;
    for (size_t j = 0; j < s.values.size(); ++j) s.values[j] = get_f64(p + 8 * j);
    return s;
}

void write_snapshot(const std::filesystem::path& path, double t, const ModelParams& p,
                    const SpectralField& u) {
    const auto phys = to_physical(u);
    Snapshot s{u.grid().n(), t, p, {phys.values().begin(), phys.values().end()}};
    const auto bytes = encode_snapshot(s);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw std::runtime_error("failed writing " + path.string());
}

Snapshot read_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open snapshot " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return decode_snapshot(bytes);
}

} // namespace fks
