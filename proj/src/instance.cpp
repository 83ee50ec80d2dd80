#include "arcflow/instance.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

namespace arcflow {

std::string WeightVec::to_string(char sep) const {
    std::string out;
    for (std::size_t d = 0; d < c.size(); ++d) {
        if (d) out += sep;
        out += std::to_string(c[d]);
    }
    return out;
}

std::int64_t Instance::total_demand() const {
    std::int64_t b0 = 0;
    for (const auto& it : items) b0 += it.demand;
    return b0;
}

WeightVec Instance::max_capacity() const {
    WeightVec mx(static_cast<std::size_t>(p), 0);
    for (const auto& b : bins)
        for (int d = 0; d < p; ++d) mx[d] = std::max(mx[d], b.capacity[d]);
    return mx;
}

void Instance::validate() const {
    if (p < 1) throw ValidationError("p must be >= 1");
    if (bins.empty()) throw ValidationError("q must be >= 1");
    if (items.empty()) throw ValidationError("m must be >= 1");
    for (std::size_t t = 0; t < bins.size(); ++t) {
        const auto& b = bins[t];
        if (static_cast<int>(b.capacity.dims()) != p)
            throw ValidationError("bin " + std::to_string(t + 1) + " capacity dimension mismatch");
        if (b.cost < 0) throw ValidationError("bin cost must be >= 0");
        bool positive = false;
        for (auto v : b.capacity.c) {
            if (v < 0) throw ValidationError("negative capacity");
            if (v > 0) positive = true;
        }
        if (!positive)
            throw ValidationError("bin " + std::to_string(t + 1) + " has zero capacity in every dimension");
    }
    for (std::size_t i = 0; i < items.size(); ++i) {
        const auto& it = items[i];
        if (it.demand < 1) throw ValidationError("b_" + std::to_string(i + 1) + " must be >= 1");
        if (it.incarnations.empty())
            throw ValidationError("J_" + std::to_string(i + 1) + " must be >= 1");
        if (it.incarnation_j.size() != it.incarnations.size())
            throw ValidationError("incarnation index bookkeeping broken");
        for (const auto& w : it.incarnations) {
            if (static_cast<int>(w.dims()) != p)
                throw ValidationError("item " + std::to_string(i + 1) + " weight dimension mismatch");
            for (auto v : w.c)
                if (v < 0) throw ValidationError("negative weight");
            if (w.is_zero())
                throw ValidationError("item " + std::to_string(i + 1) +
                                      " has an incarnation with zero weight in every dimension");
        }
    }
}

namespace {

// Whitespace-separated integer tokens with '#' line comments; tracks
// position for error messages.
class TokenReader {
public:
    explicit TokenReader(std::istream& in) : in_(in) {}

    std::int64_t next(const char* what) {
        skip();
        if (!have_char()) {
            throw ParseError(std::string("unexpected end of input while reading ") + what +
                             " (token " + std::to_string(index_ + 1) + ", line " +
                             std::to_string(line_) + ")");
        }
        std::string tok;
        while (have_char() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != '#')
            tok += get();
        ++index_;
        try {
            std::size_t used = 0;
            long long v = std::stoll(tok, &used);
            if (used != tok.size()) throw std::invalid_argument(tok);
            return v;
        } catch (const std::exception&) {
            throw ParseError("non-integer token '" + tok + "' while reading " + std::string(what) +
                             " (token " + std::to_string(index_) + ", line " +
                             std::to_string(line_) + ")");
        }
    }

    std::int64_t next_min(const char* what, std::int64_t lo) {
        std::int64_t v = next(what);
        if (v < lo) {
            throw ParseError(std::string(what) + " must be >= " + std::to_string(lo) + ", got " +
                             std::to_string(v) + " (token " + std::to_string(index_) + ", line " +
                             std::to_string(line_) + ")");
        }
        return v;
    }

    bool at_end() {
        skip();
        return !have_char();
    }

private:
    void skip() {
        while (have_char()) {
            char c = peek();
            if (c == '#') {
                while (have_char() && get() != '\n') {
                }
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                get();
            } else {
                break;
            }
        }
    }
    bool have_char() { return in_.peek() != std::char_traits<char>::eof(); }
    char peek() { return static_cast<char>(in_.peek()); }
    char get() {
        char c = static_cast<char>(in_.get());
        if (c == '\n') ++line_;
        return c;
    }

    std::istream& in_;
    long index_ = 0;
    long line_ = 1;
};

WeightVec read_vec(TokenReader& r, int p, const char* what) {
    WeightVec w(static_cast<std::size_t>(p));
    for (int d = 0; d < p; ++d) w[d] = r.next_min(what, 0);
    return w;
}

} // namespace

Instance parse_mvp(std::istream& in) {
    TokenReader r(in);
    Instance inst;
    inst.p = static_cast<int>(r.next_min("p", 1));
    int q = static_cast<int>(r.next_min("q", 1));
    for (int t = 0; t < q; ++t) {
        BinType b;
        b.capacity = read_vec(r, inst.p, "capacity");
        b.cost = r.next_min("cost", 0);
        inst.bins.push_back(std::move(b));
    }
    int m = static_cast<int>(r.next_min("m", 1));
    for (int i = 0; i < m; ++i) {
        ItemType it;
        it.demand = r.next_min("b_i", 1);
        int ji = static_cast<int>(r.next_min("J_i", 1));
        for (int j = 0; j < ji; ++j) {
            it.incarnations.push_back(read_vec(r, inst.p, "weight"));
            it.incarnation_j.push_back(j + 1);
        }
        inst.items.push_back(std::move(it));
    }
    inst.validate();
    return inst;
}

Instance parse_vbp(std::istream& in) {
    TokenReader r(in);
    Instance inst;
    inst.p = static_cast<int>(r.next_min("p", 1));
    BinType b;
    b.capacity = read_vec(r, inst.p, "capacity");
    b.cost = 1;
    inst.bins.push_back(std::move(b));
    int m = static_cast<int>(r.next_min("m", 1));
    for (int i = 0; i < m; ++i) {
        ItemType it;
        it.incarnations.push_back(read_vec(r, inst.p, "weight"));
        it.incarnation_j.push_back(1);
        it.demand = r.next_min("b_i", 1);
        inst.items.push_back(std::move(it));
    }
    inst.validate();
    return inst;
}

Instance parse_mvp(const std::string& text) {
    std::istringstream in(text);
    return parse_mvp(in);
}

Instance parse_vbp(const std::string& text) {
    std::istringstream in(text);
    return parse_vbp(in);
}

Instance normalize(const Instance& inst, Diagnostics* diag) {
    inst.validate();
    Instance out = inst;
    for (std::size_t i = 0; i < out.items.size(); ++i) {
        auto& it = out.items[i];
        std::vector<WeightVec> kept;
        std::vector<int> kept_j;
        for (std::size_t k = 0; k < it.incarnations.size(); ++k) {
            const auto& w = it.incarnations[k];
            bool fits = false;
            for (const auto& b : inst.bins)
                if (w.fits_in(b.capacity)) {
                    fits = true;
                    break;
                }
            if (!fits) {
                if (diag)
                    diag->messages.push_back("item " + std::to_string(i + 1) + " incarnation " +
                                             std::to_string(it.incarnation_j[k]) + " (" +
                                             w.to_string() + ") fits no bin type; removed");
                continue;
            }
            bool dup = false;
            for (const auto& prev : kept)
                if (prev == w) {
                    dup = true;
                    break;
                }
            if (dup) {
                if (diag)
                    diag->messages.push_back("item " + std::to_string(i + 1) + " incarnation " +
                                             std::to_string(it.incarnation_j[k]) +
                                             " duplicates an earlier incarnation; removed");
                continue;
            }
            kept.push_back(w);
            kept_j.push_back(it.incarnation_j[k]);
        }
        if (kept.empty())
            throw ValidationError("item " + std::to_string(i + 1) + " has no feasible incarnation");
        it.incarnations = std::move(kept);
        it.incarnation_j = std::move(kept_j);
    }
    return out;
}

OrderedIncarnations sort_items(const Instance& inst) {
    return sort_items(inst, inst.max_capacity());
}

OrderedIncarnations sort_items(const Instance& inst, const WeightVec& global_max) {
    OrderedIncarnations order;
    for (int i = 0; i < inst.m(); ++i) {
        const auto& it = inst.items[static_cast<std::size_t>(i)];
        for (std::size_t k = 0; k < it.incarnations.size(); ++k) {
            OrderedIncarnation oi;
            oi.item = i + 1;
            oi.inc = it.incarnation_j[k];
            oi.weight = it.incarnations[k];
            oi.demand = it.demand;
            for (int d = 0; d < inst.p; ++d) {
                if (global_max[static_cast<std::size_t>(d)] == 0) continue; // w^d must be 0 too
                oi.alpha.add_fraction(oi.weight[static_cast<std::size_t>(d)],
                                      global_max[static_cast<std::size_t>(d)]);
            }
            order.push_back(std::move(oi));
        }
    }
    std::sort(order.begin(), order.end(), [](const OrderedIncarnation& a, const OrderedIncarnation& b) {
        int c = a.alpha.compare(b.alpha);
        if (c != 0) return c > 0;                      // non-increasing alpha
        if (a.weight != b.weight) return b.weight < a.weight; // decreasing lexicographic
        if (a.item != b.item) return a.item < b.item;  // ascending (i, j)
        return a.inc < b.inc;
    });
    return order;
}

const WeightVec& incarnation_weight(const Instance& inst, int i, int j) {
    if (i < 1 || i > inst.m()) throw ValidationError("unknown item " + std::to_string(i));
    const auto& it = inst.items[static_cast<std::size_t>(i - 1)];
    for (std::size_t k = 0; k < it.incarnation_j.size(); ++k)
        if (it.incarnation_j[k] == j) return it.incarnations[k];
    throw ValidationError("unknown incarnation (" + std::to_string(i) + "," + std::to_string(j) + ")");
}

std::string to_canonical_mvp(const Instance& inst) {
    std::ostringstream out;
    out << inst.p << ' ' << inst.q() << '\n';
    for (const auto& b : inst.bins) out << b.capacity.to_string(' ') << ' ' << b.cost << '\n';
    out << inst.m() << '\n';
    for (const auto& it : inst.items) {
        out << it.demand << ' ' << it.incarnations.size() << '\n';
        for (const auto& w : it.incarnations) out << w.to_string(' ') << '\n';
    }
    return out.str();
}

} // namespace arcflow
