// SPDX-License-Identifier: Apache-2.0
#include "tiht/io.hpp"

#include <nlohmann/json.hpp>

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

namespace tiht {

namespace {

constexpr std::string_view kMagic = "TIHT1\n";

void write_u64(std::ostream& os, std::uint64_t v) {
    std::array<char, 8> bytes{};
    for (int i = 0; i < 8; ++i) bytes[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xffU);
    os.write(bytes.data(), 8);
}

std::uint64_t read_u64(std::istream& is) {
    std::array<unsigned char, 8> bytes{};
    is.read(reinterpret_cast<char*>(bytes.data()), 8);
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) v = (v << 8) | bytes[static_cast<std::size_t>(i)];
    return v;
}

void write_double(std::ostream& os, double x) { write_u64(os, std::bit_cast<std::uint64_t>(x)); }
double read_double(std::istream& is) { return std::bit_cast<double>(read_u64(is)); }

template <Scalar T>
void write_values(std::ostream& os, const T* data, Index n) {
    for (Index i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<T, double>) {
            write_double(os, data[i]);
        } else {
            write_double(os, data[i].real());
            write_double(os, data[i].imag());
        }
    }
}

template <Scalar T>
void read_values(std::istream& is, T* data, Index n) {
    for (Index i = 0; i < n; ++i) {
        if constexpr (std::is_same_v<T, double>) {
            data[i] = read_double(is);
        } else {
            const double re = read_double(is);
            data[i] = Complex(re, read_double(is));
        }
    }
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path.string() + "' for writing");
    return os;
}

void write_header(std::ostream& os, const nlohmann::json& header) {
    const std::string text = header.dump();
    os.write(kMagic.data(), static_cast<std::streamsize>(kMagic.size()));
    write_u64(os, text.size());
    os.write(text.data(), static_cast<std::streamsize>(text.size()));
}

struct Reader {
    std::ifstream is;
    nlohmann::json header;
    std::filesystem::path path;

    explicit Reader(const std::filesystem::path& p) : is(p, std::ios::binary), path(p) {
        if (!is) throw IoError("cannot open '" + p.string() + "' for reading");
        std::string magic(kMagic.size(), '\0');
        is.read(magic.data(), static_cast<std::streamsize>(magic.size()));
        if (!is || magic != kMagic) throw IoError("'" + p.string() + "' is not a TIHT container");
        const auto len = read_u64(is);
        if (!is || len > (1ULL << 30)) throw IoError("'" + p.string() + "' has a corrupt header length");
        std::string text(len, '\0');
        is.read(text.data(), static_cast<std::streamsize>(len));
        if (!is) throw IoError("'" + p.string() + "' is truncated in its header");
        try {
            header = nlohmann::json::parse(text);
        } catch (const nlohmann::json::exception& e) {
            throw IoError("'" + p.string() + "' has an unreadable header: " + e.what());
        }
    }

    void check(const char* what) const {
        if (!is) throw IoError("'" + path.string() + "' is truncated while reading " + what);
    }
};

template <Scalar T>
void require_field(const nlohmann::json& header, const std::filesystem::path& path) {
    const Field stored = parse_field(header.at("field").get<std::string>());
    if (stored != field_of<T>()) {
        throw ArgumentError("'" + path.string() + "' holds " + std::string(to_string(stored)) +
                            " data, requested " + std::string(to_string(field_of<T>())));
    }
}

nlohmann::json dims_json(const Shape& s) { return s.dims(); }

template <Scalar T>
void write_block(std::ostream& os, const Tensor<T>& t) {
    write_values(os, t.data().data(), t.size());
}

template <Scalar T>
void write_block(std::ostream& os, const Matrix<T>& m) {
    write_values(os, m.data(), m.size());
}

}  // namespace

template <Scalar T>
void save_tensor(const std::filesystem::path& path, const Tensor<T>& x) {
    auto os = open_out(path);
    write_header(os, {{"kind", "tensor"},
                      {"order", x.order()},
                      {"dims", dims_json(x.shape())},
                      {"field", std::string(to_string(field_of<T>()))}});
    write_block(os, x);
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

template <Scalar T>
Tensor<T> load_tensor(const std::filesystem::path& path) {
    Reader r(path);
    try {
        if (r.header.at("kind") != "tensor") throw IoError("'" + path.string() + "' does not hold a dense tensor");
        require_field<T>(r.header, path);
        Shape shape(r.header.at("dims").get<std::vector<Index>>());
        if (r.header.at("order").get<Index>() != shape.order()) throw IoError("'" + path.string() + "': order/dims mismatch");
        Tensor<T> x(shape);
        read_values(r.is, x.data().data(), x.size());
        r.check("tensor data");
        return x;
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path.string() + "' has a malformed header: " + e.what());
    }
}

Field stored_field(const std::filesystem::path& path) {
    Reader r(path);
    try {
        return parse_field(r.header.at("field").get<std::string>());
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path.string() + "' has a malformed header: " + e.what());
    }
}

template <Scalar T>
void save_decomposition(const std::filesystem::path& path, const Decomposition<T>& d) {
    nlohmann::json header = {{"field", std::string(to_string(field_of<T>()))}};
    nlohmann::json blocks = nlohmann::json::array();
    auto add = [&](const std::string& name, std::vector<Index> dims) {
        blocks.push_back({{"name", name}, {"dims", dims}});
    };
    std::visit(
        [&](const auto& dec) {
            using D = std::decay_t<decltype(dec)>;
            if constexpr (std::is_same_v<D, HosvdDecomposition<T>>) {
                header["kind"] = "hosvd";
                add("core", dec.core.shape().dims());
                for (std::size_t k = 0; k < dec.factors.size(); ++k)
                    add("factor" + std::to_string(k), {dec.factors[k].rows(), dec.factors[k].cols()});
            } else if constexpr (std::is_same_v<D, TTDecomposition<T>>) {
                header["kind"] = "tt";
                for (std::size_t k = 0; k < dec.cores.size(); ++k) add("core" + std::to_string(k), dec.cores[k].shape().dims());
            } else {
                header["kind"] = "ht";
                header["tree"] = dec.tree.to_json();
                for (std::size_t k = 0; k < dec.frames.size(); ++k)
                    add("frame" + std::to_string(k), {dec.frames[k].rows(), dec.frames[k].cols()});
                for (std::size_t id = 0; id < dec.transfers.size(); ++id)
                    if (!dec.tree.node(static_cast<int>(id)).is_leaf())
                        add("transfer" + std::to_string(id), dec.transfers[id].shape().dims());
            }
        },
        d);
    header["blocks"] = blocks;

    auto os = open_out(path);
    write_header(os, header);
    std::visit(
        [&](const auto& dec) {
            using D = std::decay_t<decltype(dec)>;
            if constexpr (std::is_same_v<D, HosvdDecomposition<T>>) {
                write_block(os, dec.core);
                for (const auto& f : dec.factors) write_block(os, f);
            } else if constexpr (std::is_same_v<D, TTDecomposition<T>>) {
                for (const auto& c : dec.cores) write_block(os, c);
            } else {
                for (const auto& f : dec.frames) write_block(os, f);
                for (std::size_t id = 0; id < dec.transfers.size(); ++id)
                    if (!dec.tree.node(static_cast<int>(id)).is_leaf()) write_block(os, dec.transfers[id]);
            }
        },
        d);
    if (!os) throw IoError("failed writing '" + path.string() + "'");
}

template <Scalar T>
Decomposition<T> load_decomposition(const std::filesystem::path& path) {
    Reader r(path);
    try {
        require_field<T>(r.header, path);
        const auto kind = r.header.at("kind").get<std::string>();
        const auto& blocks = r.header.at("blocks");
        std::size_t next = 0;
        auto next_dims = [&]() {
            if (next >= blocks.size()) throw IoError("'" + path.string() + "' lists too few blocks");
            return blocks[next++].at("dims").get<std::vector<Index>>();
        };
        auto read_tensor = [&]() {
            Tensor<T> t{Shape(next_dims())};
            read_values(r.is, t.data().data(), t.size());
            r.check("block data");
            return t;
        };
        auto read_matrix = [&]() {
            auto dims = next_dims();
            if (dims.size() != 2) throw IoError("'" + path.string() + "': matrix block must be 2-dimensional");
            Matrix<T> m(dims[0], dims[1]);
            read_values(r.is, m.data(), m.size());
            r.check("block data");
            return m;
        };

        if (kind == "hosvd") {
            HosvdDecomposition<T> h;
            h.core = read_tensor();
            for (Index k = 0; k < h.core.order(); ++k) h.factors.push_back(read_matrix());
            return h;
        }
        if (kind == "tt") {
            TTDecomposition<T> tt;
            while (next < blocks.size()) tt.cores.push_back(read_tensor());
            return tt;
        }
        if (kind == "ht") {
            HTDecomposition<T> h;
            h.tree = DimensionTree::from_json(r.header.at("tree"));
            for (Index k = 0; k < h.tree.order(); ++k) h.frames.push_back(read_matrix());
            h.transfers.resize(static_cast<std::size_t>(h.tree.node_count()));
            for (int id = 0; id < h.tree.node_count(); ++id)
                if (!h.tree.node(id).is_leaf()) h.transfers[static_cast<std::size_t>(id)] = read_tensor();
            return h;
        }
        throw IoError("'" + path.string() + "' holds unknown kind '" + kind + "'");
    } catch (const nlohmann::json::exception& e) {
        throw IoError("'" + path.string() + "' has a malformed header: " + e.what());
    }
}

#define TIHT_INSTANTIATE(T)                                                               \
    template void save_tensor(const std::filesystem::path&, const Tensor<T>&);            \
    template Tensor<T> load_tensor(const std::filesystem::path&);                         \
    template void save_decomposition(const std::filesystem::path&, const Decomposition<T>&); \
    template Decomposition<T> load_decomposition(const std::filesystem::path&);

TIHT_INSTANTIATE(double)
TIHT_INSTANTIATE(Complex)

#undef TIHT_INSTANTIATE

}  // namespace tiht
