// Textual code file format:
//
//   scwcode v1
//   family EBCH
//   n 128
//   k 64
//   dh 22                      (optional)
//   param seed 7               (family-specific, optional)
//   G
//   <k hex rows, ceil(n/4) digits; nibble j holds bits 4j..4j+3, bit 4j is
//    the nibble's most significant bit>
//   end

#include <fstream>
#include <sstream>

#include "scw/codes.hpp"

namespace scw {

namespace {

std::string row_to_hex(const BitMatrix& g, std::size_t r) {
    const std::size_t n = g.cols();
    const std::size_t digits = (n + 3) / 4;
    std::string s(digits, '0');
    for (std::size_t j = 0; j < digits; ++j) {
        unsigned v = 0;
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t c = 4 * j + b;
            if (c < n && g.get(r, c)) v |= 8u >> b;
        }
        s[j] = "0123456789abcdef"[v];
    }
    return s;
}

void hex_to_row(BitMatrix& g, std::size_t r, const std::string& s) {
    const std::size_t n = g.cols();
    if (s.size() != (n + 3) / 4) throw IoError("code file: bad row length");
    for (std::size_t j = 0; j < s.size(); ++j) {
        const char ch = s[j];
        unsigned v;
        if (ch >= '0' && ch <= '9')
            v = static_cast<unsigned>(ch - '0');
        else if (ch >= 'a' && ch <= 'f')
            v = static_cast<unsigned>(ch - 'a' + 10);
        else if (ch >= 'A' && ch <= 'F')
            v = static_cast<unsigned>(ch - 'A' + 10);
        else
            throw IoError("code file: bad hex digit");
        for (unsigned b = 0; b < 4; ++b) {
            const std::size_t c = 4 * j + b;
            if (c < n && (v & (8u >> b))) g.set(r, c, true);
        }
    }
}

std::string join_u32(const std::vector<std::uint32_t>& v) {
    std::ostringstream os;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) os << ',';
        os << v[i];
    }
    return os.str();
}

std::vector<std::uint32_t> split_u32(const std::string& s) {
    std::vector<std::uint32_t> v;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) v.push_back(static_cast<std::uint32_t>(std::stoul(tok)));
    return v;
}

}  // namespace

void save_code(const Code& code, std::ostream& os) {
    os << "scwcode v1\n";
    os << "family " << family_name(code.spec.family) << "\n";
    os << "n " << code.n() << "\n";
    os << "k " << code.k() << "\n";
    if (code.dh) os << "dh " << *code.dh << "\n";
    const CodeParams& p = code.spec.params;
    os << "param seed " << p.seed << "\n";
    if (p.design_es_n0_db) os << "param design_es_n0_db " << *p.design_es_n0_db << "\n";
    if (p.crc_poly) os << "param crc_poly 0x" << std::hex << p.crc_poly << std::dec << "\n";
    if (p.conv_poly) os << "param conv_poly 0x" << std::hex << p.conv_poly << std::dec << "\n";
    if (p.eval_es_n0_db) {
        os << "param candidates_per_step " << p.candidates_per_step << "\n";
        os << "param eval_es_n0_db " << *p.eval_es_n0_db << "\n";
    }
    if (!p.keep.empty()) os << "param keep " << join_u32(p.keep) << "\n";
    if (!p.reliability.empty()) os << "param reliability " << join_u32(p.reliability) << "\n";
    os << "G\n";
    for (std::size_t r = 0; r < code.g.rows(); ++r) os << row_to_hex(code.g, r) << "\n";
    os << "end\n";
}

void save_code_file(const Code& code, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open for writing: " + path);
    save_code(code, os);
}

Code load_code(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "scwcode v1")
        throw IoError("code file: missing scwcode v1 header");
    CodeSpec spec;
    std::optional<std::uint32_t> dh;
    bool have_family = false, have_n = false, have_k = false;
    while (std::getline(is, line)) {
        if (line == "G") break;
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key.empty() || key[0] == '#') continue;
        if (key == "family") {
            std::string v;
            ls >> v;
            spec.family = family_from_name(v);
            have_family = true;
        } else if (key == "n") {
            ls >> spec.n;
            have_n = true;
        } else if (key == "k") {
            ls >> spec.k;
            have_k = true;
        } else if (key == "dh") {
            std::uint32_t v;
            ls >> v;
            dh = v;
        } else if (key == "param") {
            std::string name, value;
            ls >> name >> value;
            if (name == "seed")
                spec.params.seed = std::stoull(value);
            else if (name == "design_es_n0_db")
                spec.params.design_es_n0_db = std::stod(value);
            else if (name == "crc_poly")
                spec.params.crc_poly = std::stoull(value, nullptr, 0);
            else if (name == "conv_poly")
                spec.params.conv_poly = std::stoull(value, nullptr, 0);
            else if (name == "candidates_per_step")
                spec.params.candidates_per_step = static_cast<std::uint32_t>(std::stoul(value));
            else if (name == "eval_es_n0_db")
                spec.params.eval_es_n0_db = std::stod(value);
            else if (name == "keep")
                spec.params.keep = split_u32(value);
            else if (name == "reliability")
                spec.params.reliability = split_u32(value);
            else
                throw IoError("code file: unknown param " + name);
        } else {
            throw IoError("code file: unknown key " + key);
        }
    }
    if (!have_family || !have_n || !have_k) throw IoError("code file: incomplete header");
    if (spec.k < 1 || spec.k >= spec.n) throw IoError("code file: need 1 <= k < n");

    BitMatrix g(spec.k, spec.n);
    for (std::uint32_t r = 0; r < spec.k; ++r) {
        if (!std::getline(is, line)) throw IoError("code file: truncated G");
        hex_to_row(g, r, line);
    }
    if (!std::getline(is, line) || line != "end") throw IoError("code file: missing end marker");

    if (rank(g) != spec.k) throw RankDeficient("code file: G is rank deficient");

    Code code;
    code.spec = spec;
    code.g = std::move(g);
    code.dh = dh;
    code.finalize();

    // H is re-derived; confirm the pair is consistent
    BitMatrix prod = multiply(code.g, transpose(code.h));
    for (std::size_t r = 0; r < prod.rows(); ++r)
        for (std::size_t c = 0; c < prod.cols(); ++c)
            if (prod.get(r, c)) throw IoError("code file: G*H^T != 0");

    // reattach a decoder descriptor when the stored spec reproduces G exactly
    if (spec.params.keep.empty() &&
        (spec.family == CodeFamily::Polar || spec.family == CodeFamily::CrcPolar ||
         spec.family == CodeFamily::Pac)) {
        try {
            Code rebuilt = build_code(spec);
            if (rebuilt.g == code.g) code.descriptor = std::move(rebuilt.descriptor);
        } catch (const Error&) {
        }
    }
    return code;
}

Code load_code_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open: " + path);
    return load_code(is);
}

}  // namespace scw
