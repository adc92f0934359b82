#include "listrec/codes.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace listrec {

std::size_t CodeParams::symbol_arity() const {
    if (family == Family::frs || m == 1) return s;
    return deriv_index_count(m, s);
}

std::size_t CodeParams::pow_n() const {
    std::size_t v = 1;
    for (std::uint32_t i = 0; i < m; ++i) v *= field.q();
    return v;
}

std::vector<felem> CodeParams::point(std::size_t idx) const {
    if (m == 1) return {evalset.at(idx)};
    // lexicographic over F_q^m, first coordinate most significant
    std::vector<felem> pt(m);
    for (std::uint32_t j = m; j-- > 0;) {
        pt[j] = felem(idx % field.q());
        idx /= field.q();
    }
    return pt;
}

CodeParams frs_params(const PrimeField& f, std::uint32_t s, std::uint32_t n, std::uint32_t d) {
    std::vector<felem> evalset(n);
    for (std::uint32_t i = 0; i < n; ++i) evalset[i] = f.pow(f.gamma(), std::uint64_t(s) * i);
    return frs_params(f, s, n, d, std::move(evalset));
}

CodeParams frs_params(const PrimeField& f, std::uint32_t s, std::uint32_t n, std::uint32_t d,
                      std::vector<felem> evalset) {
    require(s >= 1 && n >= 1, errc::invalid_argument, "frs_params: s, n must be positive");
    require(n <= (f.q() - 1) / s, errc::invalid_argument, "frs_params: n exceeds (q-1)/s");
    require(evalset.size() == n, errc::invalid_argument, "frs_params: evalset size mismatch");
    std::set<felem> allowed;
    for (std::uint32_t i = 0; i <= (f.q() - 1) / s - 1; ++i)
        allowed.insert(f.pow(f.gamma(), std::uint64_t(s) * i));
    std::set<felem> seen;
    for (felem a : evalset) {
        require(allowed.count(a), errc::invalid_argument,
                "frs_params: evaluation point not of the form gamma^{si}");
        require(seen.insert(a).second, errc::invalid_argument,
                "frs_params: duplicate evaluation point");
    }
    CodeParams p;
    p.family = Family::frs;
    p.field = f;
    p.s = s;
    p.m = 1;
    p.n = n;
    p.d = d;
    p.evalset = std::move(evalset);
    return p;
}

CodeParams mult_params(const PrimeField& f, std::uint32_t s, std::uint32_t m, std::uint32_t n,
                       std::uint32_t d) {
    require(s >= 1 && m >= 1, errc::invalid_argument, "mult_params: s, m must be positive");
    CodeParams p;
    p.family = Family::mult;
    p.field = f;
    p.s = s;
    p.m = m;
    p.d = d;
    if (m == 1) {
        require(n <= f.q(), errc::invalid_argument, "mult_params: n exceeds q");
        p.n = n;
        p.evalset.resize(n);
        for (std::uint32_t i = 0; i < n; ++i) p.evalset[i] = i;
    } else {
        // whole-field evaluation domain
        require(n == 0 || n == p.pow_n(), errc::invalid_argument,
                "mult_params: multivariate block length must be q^m");
        p.n = std::uint32_t(p.pow_n());
    }
    return p;
}

CodeParams mult_params_univariate(const PrimeField& f, std::uint32_t s, std::uint32_t d,
                                  std::vector<felem> evalset) {
    auto p = mult_params(f, s, 1, std::uint32_t(evalset.size()), d);
    std::set<felem> seen;
    for (felem a : evalset) {
        require(a < f.q(), errc::invalid_argument, "mult_params: point out of range");
        require(seen.insert(a).second, errc::invalid_argument, "mult_params: duplicate point");
    }
    p.evalset = std::move(evalset);
    return p;
}

namespace codes {

Codeword frs_encode(const CodeParams& p, const Poly& poly) {
    require(p.family == Family::frs, errc::invalid_argument, "frs_encode on non-frs params");
    require(poly.degree() <= p.d, errc::degree_too_high, "frs_encode: degree exceeds d");
    Codeword c;
    c.symbols.reserve(p.n);
    const auto& f = p.field;
    for (felem a : p.evalset) {
        std::vector<felem> sym(p.s);
        felem x = a;
        for (std::uint32_t i = 0; i < p.s; ++i) {
            sym[i] = poly::eval(f, poly, x);
            x = f.mul(x, f.gamma());
        }
        c.symbols.push_back(std::move(sym));
    }
    return c;
}

Codeword mult_encode(const CodeParams& p, const Poly& poly) {
    require(p.family == Family::mult && p.m == 1, errc::dimension_mismatch,
            "mult_encode: univariate message for m != 1");
    require(poly.degree() <= p.d, errc::degree_too_high, "mult_encode: degree exceeds d");
    Codeword c;
    c.symbols.reserve(p.n);
    for (felem a : p.evalset) c.symbols.push_back(poly::eval_order(p.field, poly, a, p.s));
    return c;
}

Codeword mult_encode(const CodeParams& p, const MultiPoly& poly) {
    require(p.family == Family::mult, errc::invalid_argument, "mult_encode on non-mult params");
    require(poly.m == p.m, errc::dimension_mismatch, "mult_encode: variable count mismatch");
    require(poly.total_degree() <= p.d, errc::degree_too_high, "mult_encode: degree exceeds d");
    Codeword c;
    std::size_t len = p.block_length();
    c.symbols.reserve(len);
    // Evaluate each Hasse derivative once over the whole domain.
    auto idx = deriv_indices(p.m, p.s);
    std::vector<MultiPoly> derivs;
    derivs.reserve(idx.size());
    for (const auto& i : idx) derivs.push_back(poly::mp_hasse_derive(p.field, poly, i));
    for (std::size_t pos = 0; pos < len; ++pos) {
        auto pt = p.point(pos);
        std::vector<felem> sym(idx.size());
        for (std::size_t k = 0; k < idx.size(); ++k)
            sym[k] = poly::mp_eval(p.field, derivs[k], pt);
        c.symbols.push_back(std::move(sym));
    }
    return c;
}

Codeword encode(const CodeParams& p, const Poly& poly) {
    return p.family == Family::frs ? frs_encode(p, poly) : mult_encode(p, poly);
}

CodeStats code_stats(const CodeParams& p) {
    CodeStats st;
    if (p.family == Family::frs || p.m == 1) {
        st.rate = Rat(std::int64_t(p.d) + 1, std::int64_t(p.s) * p.n);
        st.distance = Rat(1) - Rat(p.d, std::int64_t(p.s) * p.n);
    } else {
        Rat base = Rat(p.d, std::int64_t(p.s) * p.field.q());
        Rat pw(1);
        for (std::uint32_t i = 0; i < p.m; ++i) pw = pw * base;
        Rat front = Rat(1) - Rat(std::int64_t(p.m) * p.m, p.s);
        if (front < Rat(0)) front = Rat(0);
        st.rate = front * pw;
        st.rate_is_bound = true;
        st.distance = Rat(1) - base;
    }
    return st;
}

Rat dist(const Codeword& c, const ListWord& s) {
    require(c.symbols.size() == s.lists.size(), errc::dimension_mismatch, "dist length mismatch");
    std::int64_t bad = 0;
    for (std::size_t i = 0; i < c.symbols.size(); ++i) {
        bool found = false;
        for (const auto& y : s.lists[i]) found |= (y == c.symbols[i]);
        bad += !found;
    }
    return Rat(bad, std::int64_t(c.symbols.size()));
}

Rat dist(const Codeword& a, const Codeword& b) {
    require(a.symbols.size() == b.symbols.size(), errc::dimension_mismatch,
            "dist length mismatch");
    std::int64_t bad = 0;
    for (std::size_t i = 0; i < a.symbols.size(); ++i) bad += (a.symbols[i] != b.symbols[i]);
    return Rat(bad, std::int64_t(a.symbols.size()));
}

namespace {

std::vector<felem> random_symbol(const CodeParams& p, rng::Stream& rng) {
    std::vector<felem> sym(p.symbol_arity());
    for (auto& v : sym) v = felem(rng.below(p.field.q()));
    return sym;
}

ListWord plant_channel_impl(const CodeParams& p, const Codeword& c, const Rat& alpha,
                            std::uint32_t ell, rng::Stream& rng,
                            const std::vector<Codeword>& decoy_words) {
    require(Rat(0) <= alpha && alpha <= Rat(1), errc::invalid_argument,
            "plant_channel: alpha outside [0,1]");
    require(ell >= 1, errc::invalid_argument, "plant_channel: ell must be >= 1");
    std::size_t n = c.symbols.size();
    require(n == p.block_length(), errc::dimension_mismatch, "plant_channel: length mismatch");
    std::uint64_t corrupt_count = std::uint64_t((alpha * Rat(std::int64_t(n))).floor());
    auto corrupted = rng.sample_without_replacement(n, corrupt_count);
    std::vector<bool> is_corrupt(n, false);
    for (auto i : corrupted) is_corrupt[i] = true;

    ListWord out;
    out.lists.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<std::vector<felem>> list;
        if (!is_corrupt[i]) list.push_back(c.symbols[i]);
        std::size_t decoy_idx = 0;
        while (list.size() < ell) {
            std::vector<felem> sym;
            if (decoy_idx < decoy_words.size())
                sym = decoy_words[decoy_idx++].symbols[i];
            else
                sym = random_symbol(p, rng);
            if (sym == c.symbols[i]) continue;  // never reintroduce the true symbol
            bool dup = false;
            for (const auto& y : list) dup |= (y == sym);
            if (!dup) list.push_back(std::move(sym));
        }
        // fixed order regardless of which position holds the true symbol
        std::sort(list.begin(), list.end());
        out.lists[i] = std::move(list);
    }
    return out;
}

}  // namespace

ListWord plant_channel(const CodeParams& p, const Codeword& c, const Rat& alpha,
                       std::uint32_t ell, rng::Stream& rng) {
    return plant_channel_impl(p, c, alpha, ell, rng, {});
}

ListWord plant_channel_adversarial(const CodeParams& p, const Codeword& c, const Rat& alpha,
                                   std::uint32_t ell, rng::Stream& rng) {
    std::vector<Codeword> decoys;
    for (std::uint32_t k = 0; k + 1 < ell; ++k) {
        if (p.family == Family::mult && p.m >= 2)
            decoys.push_back(mult_encode(p, random_multipoly(p.field, p.m, p.d, rng)));
        else
            decoys.push_back(encode(p, random_poly(p.field, p.d, rng)));
    }
    return plant_channel_impl(p, c, alpha, ell, rng, decoys);
}

Poly random_poly(const PrimeField& f, std::uint32_t d, rng::Stream& rng) {
    Poly p;
    p.c.resize(d + 1);
    for (auto& c : p.c) c = felem(rng.below(f.q()));
    p.trim();
    return p;
}

MultiPoly random_multipoly(const PrimeField& f, std::uint32_t m, std::uint32_t d,
                           rng::Stream& rng) {
    MultiPoly p;
    p.m = m;
    for (const auto& e : deriv_indices(m, d + 1)) {
        felem c = felem(rng.below(f.q()));
        if (c != 0) p.terms[e] = c;
    }
    return p;
}

Poly message_poly(const PrimeField& f, std::uint32_t d, std::uint64_t index) {
    Poly p;
    p.c.resize(d + 1);
    for (std::uint32_t k = 0; k <= d; ++k) {
        p.c[k] = felem(index % f.q());
        index /= f.q();
    }
    require(index == 0, errc::invalid_argument, "message index out of range");
    p.trim();
    return p;
}

std::uint64_t message_index(const PrimeField& f, const Poly& p) {
    std::uint64_t idx = 0;
    for (std::size_t k = p.c.size(); k-- > 0;) idx = idx * f.q() + p.c[k];
    return idx;
}

std::uint64_t message_count(const CodeParams& p) {
    std::uint64_t count = 1;
    for (std::uint32_t k = 0; k <= p.d; ++k) count *= p.field.q();
    return count;
}

namespace {

void write_symbol(std::ostringstream& os, const std::vector<felem>& sym) {
    for (std::size_t k = 0; k < sym.size(); ++k) {
        if (k) os << ',';
        os << sym[k];
    }
}

std::string header(const CodeParams& p) {
    std::ostringstream os;
    os << p.field.q() << ' ' << p.s << ' ' << p.m << ' ' << p.n << ' ' << p.d << '\n';
    return os.str();
}

std::vector<felem> parse_symbol(const std::string& tok) {
    std::vector<felem> sym;
    std::istringstream is(tok);
    std::string part;
    while (std::getline(is, part, ',')) sym.push_back(felem(std::stoul(part)));
    return sym;
}

CodeParams parse_header(Family family, std::istringstream& is) {
    std::uint32_t q, s, m, n, d;
    require(bool(is >> q >> s >> m >> n >> d), errc::io_error, "bad header line");
    is.ignore();
    if (family == Family::frs) return frs_params(PrimeField(q), s, n, d);
    return mult_params(PrimeField(q), s, m, m == 1 ? n : 0, d);
}

}  // namespace

std::string serialize(const CodeParams& p, const Codeword& c) {
    std::ostringstream os;
    os << header(p);
    for (const auto& sym : c.symbols) {
        write_symbol(os, sym);
        os << '\n';
    }
    return os.str();
}

std::string serialize(const CodeParams& p, const ListWord& w) {
    std::ostringstream os;
    os << header(p);
    for (const auto& list : w.lists) {
        for (std::size_t j = 0; j < list.size(); ++j) {
            if (j) os << '|';
            write_symbol(os, list[j]);
        }
        os << '\n';
    }
    return os.str();
}

std::pair<CodeParams, Codeword> parse_codeword(Family family, const std::string& text) {
    std::istringstream is(text);
    CodeParams p = parse_header(family, is);
    Codeword c;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        c.symbols.push_back(parse_symbol(line));
        require(c.symbols.back().size() == p.symbol_arity(), errc::io_error,
                "codeword symbol arity mismatch");
    }
    require(c.symbols.size() == p.block_length(), errc::io_error, "codeword length mismatch");
    return {std::move(p), std::move(c)};
}

std::pair<CodeParams, ListWord> parse_listword(Family family, const std::string& text) {
    std::istringstream is(text);
    CodeParams p = parse_header(family, is);
    ListWord w;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty() && w.lists.size() >= p.block_length()) continue;
        std::vector<std::vector<felem>> list;
        std::istringstream ls(line);
        std::string tok;
        while (std::getline(ls, tok, '|'))
            if (!tok.empty()) list.push_back(parse_symbol(tok));
        for (const auto& y : list)
            require(y.size() == p.symbol_arity(), errc::io_error, "list symbol arity mismatch");
        w.lists.push_back(std::move(list));
    }
    require(w.lists.size() == p.block_length(), errc::io_error, "listword length mismatch");
    return {std::move(p), std::move(w)};
}

}  // namespace codes
}  // namespace listrec
