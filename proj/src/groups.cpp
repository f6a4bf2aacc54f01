#include "scharlau/groups.hpp"

#include "scharlau/error.hpp"
#include "scharlau/modp.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>

namespace scharlau::groups {

namespace {

std::string table_error(std::size_t line, const std::string& what) {
    return "line " + std::to_string(line) + ": " + what;
}

}  // namespace

FiniteGroup::FiniteGroup(std::size_t order, std::vector<ElementId> table,
                         std::vector<std::string> labels)
    : order_(order), table_(std::move(table)), labels_(std::move(labels)) {
    const std::size_t n = order_;
    if (n == 0) throw BadTable("group order must be positive");
    if (table_.size() != n * n) throw BadTable("table has wrong size");
    if (!labels_.empty() && labels_.size() != n) throw BadTable("label count differs from order");

    for (ElementId x : table_) {
        if (x >= n) throw BadTable("table entry " + std::to_string(x) + " out of range");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (mul(kIdentity, i) != i || mul(i, kIdentity) != i) {
            throw BadTable("element 0 is not the identity (fails at " + std::to_string(i) + ")");
        }
    }
    // Latin square: each row and each column is a permutation.
    std::vector<std::uint32_t> seen(n, 0);
    std::uint32_t stamp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        ++stamp;
        for (std::size_t j = 0; j < n; ++j) {
            const ElementId x = mul(i, j);
            if (seen[x] == stamp) throw BadTable("row " + std::to_string(i) + " repeats an entry");
            seen[x] = stamp;
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        ++stamp;
        for (std::size_t i = 0; i < n; ++i) {
            const ElementId x = mul(i, j);
            if (seen[x] == stamp) throw BadTable("column " + std::to_string(j) + " repeats an entry");
            seen[x] = stamp;
        }
    }
    inverse_.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (mul(i, j) == kIdentity) {
                inverse_[i] = static_cast<ElementId>(j);
                break;
            }
        }
        if (mul(inverse_[i], i) != kIdentity) {
            throw BadTable("left and right inverse differ for " + std::to_string(i));
        }
    }
    if (n <= kFullAssociativityCheck) {
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                        throw BadTable("not associative at (" + std::to_string(a) + ", " +
                                       std::to_string(b) + ", " + std::to_string(c) + ")");
                    }
    } else {
        std::mt19937_64 rng(0x5c4a21a1);
        std::uniform_int_distribution<std::size_t> pick(0, n - 1);
        for (std::size_t k = 0; k < kSampledTriples; ++k) {
            const std::size_t a = pick(rng), b = pick(rng), c = pick(rng);
            if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
                throw BadTable("not associative at (" + std::to_string(a) + ", " +
                               std::to_string(b) + ", " + std::to_string(c) + ")");
            }
        }
    }
    element_order_.assign(n, 1);
    for (std::size_t i = 1; i < n; ++i) {
        std::size_t k = 1;
        ElementId x = static_cast<ElementId>(i);
        while (x != kIdentity) {
            x = mul(x, i);
            ++k;
        }
        element_order_[i] = k;
    }
}

bool FiniteGroup::is_abelian() const {
    for (std::size_t a = 0; a < order_; ++a)
        for (std::size_t b = a + 1; b < order_; ++b)
            if (mul(a, b) != mul(b, a)) return false;
    return true;
}

std::string FiniteGroup::label(ElementId x) const {
    if (!labels_.empty()) return labels_[x];
    return "g" + std::to_string(x);
}

Subgroup::Subgroup(const FiniteGroup& parent, std::vector<ElementId> elements)
    : parent_(&parent), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
    if (elements_.empty() || elements_.front() != kIdentity) {
        throw InputError("subgroup must contain the identity");
    }
    if (elements_.back() >= parent.order()) throw InputError("subgroup element out of range");
    if (parent.order() % elements_.size() != 0) throw InputError("subgroup order must divide group order");
    for (ElementId a : elements_) {
        if (!contains(parent.inv(a))) throw InputError("subgroup not closed under inverse");
        for (ElementId b : elements_) {
            if (!contains(parent.mul(a, b))) throw InputError("subgroup not closed under product");
        }
    }
}

Subgroup::Subgroup(const FiniteGroup& parent, std::vector<ElementId> elements, Unchecked)
    : parent_(&parent), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
}

bool Subgroup::contains(ElementId x) const {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

ElementId Subgroup::canonical_generator() const {
    return elements_.size() > 1 ? elements_[1] : kIdentity;
}

std::vector<ConjugacyClass> conjugacy_classes(const FiniteGroup& g) {
    const std::size_t n = g.order();
    std::vector<bool> assigned(n, false);
    std::vector<ConjugacyClass> classes;
    for (ElementId x = 0; x < n; ++x) {
        if (assigned[x]) continue;
        std::vector<ElementId> members;
        for (ElementId h = 0; h < n; ++h) {
            const ElementId y = g.conj(h, x);
            if (!assigned[y]) {
                assigned[y] = true;
                members.push_back(y);
            }
        }
        std::sort(members.begin(), members.end());
        classes.push_back({x, std::move(members)});
    }
    return classes;
}

Subgroup centralizer(const FiniteGroup& g, ElementId x) {
    std::vector<ElementId> out;
    for (ElementId h = 0; h < g.order(); ++h) {
        if (g.mul(h, x) == g.mul(x, h)) out.push_back(h);
    }
    return Subgroup(g, std::move(out), Subgroup::Unchecked{});
}

Subgroup set_stabilizer(const FiniteGroup& g, std::span<const ElementId> s) {
    if (s.empty()) throw InputError("set_stabilizer needs a nonempty set");
    std::vector<bool> in_set(g.order(), false);
    for (ElementId x : s) in_set[x] = true;
    std::vector<ElementId> out;
    for (ElementId h = 0; h < g.order(); ++h) {
        // Conjugation is injective, so mapping S into S means onto S.
        bool keeps = true;
        for (ElementId x : s) {
            if (!in_set[g.conj(h, x)]) {
                keeps = false;
                break;
            }
        }
        if (keeps) out.push_back(h);
    }
    return Subgroup(g, std::move(out), Subgroup::Unchecked{});
}

std::vector<ElementId> conjugation_transporter(const FiniteGroup& g, ElementId x, std::span<const ElementId> s) {
    std::vector<bool> in_set(g.order(), false);
    for (ElementId y : s) in_set[y] = true;
    std::vector<ElementId> out;
    for (ElementId h = 0; h < g.order(); ++h) {
        if (in_set[g.conj(h, x)]) out.push_back(h);
    }
    return out;
}

Subgroup cyclic_subgroup(const FiniteGroup& g, ElementId x) {
    std::vector<ElementId> out{kIdentity};
    for (ElementId y = x; y != kIdentity; y = g.mul(y, x)) out.push_back(y);
    return Subgroup(g, std::move(out), Subgroup::Unchecked{});
}

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const ElementId> generators) {
    std::vector<bool> in(g.order(), false);
    std::vector<ElementId> elements{kIdentity};
    in[kIdentity] = true;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (ElementId s : generators) {
            const ElementId y = g.mul(elements[i], s);
            if (!in[y]) {
                in[y] = true;
                elements.push_back(y);
            }
        }
    }
    return Subgroup(g, std::move(elements), Subgroup::Unchecked{});
}

std::vector<Subgroup> prime_order_subgroups(const FiniteGroup& g) {
    std::set<std::vector<ElementId>> seen;
    std::vector<Subgroup> out;
    for (ElementId x = 1; x < g.order(); ++x) {
        if (!modp::is_prime(g.element_order(x))) continue;
        Subgroup h = cyclic_subgroup(g, x);
        if (seen.insert(h.elements()).second) out.push_back(std::move(h));
    }
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
    return out;
}

std::vector<Subgroup> all_nontrivial_subgroups(const FiniteGroup& g, std::size_t max_order) {
    if (g.order() > max_order) {
        throw OrderCap("subgroup lattice enumeration capped at order " + std::to_string(max_order));
    }
    std::set<std::vector<ElementId>> seen;
    std::vector<Subgroup> out;
    std::vector<ElementId> cyclic_generators;
    for (ElementId x = 1; x < g.order(); ++x) {
        Subgroup h = cyclic_subgroup(g, x);
        if (seen.insert(h.elements()).second) {
            cyclic_generators.push_back(x);
            out.push_back(std::move(h));
        }
    }
    // Every subgroup is a join of cyclic ones; close under joining with a
    // cyclic subgroup.
    for (std::size_t i = 0; i < out.size(); ++i) {
        for (ElementId c : cyclic_generators) {
            if (out[i].contains(c)) continue;
            std::vector<ElementId> gens = out[i].elements();
            gens.push_back(c);
            Subgroup joined = generated_subgroup(g, gens);
            if (seen.insert(joined.elements()).second) out.push_back(std::move(joined));
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
    return out;
}

std::vector<ElementId> left_coset(const FiniteGroup& g, ElementId x, const Subgroup& h) {
    std::vector<ElementId> out;
    out.reserve(h.order());
    for (ElementId y : h.elements()) out.push_back(g.mul(x, y));
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<std::vector<ElementId>> left_cosets(const FiniteGroup& g, const Subgroup& h) {
    std::vector<bool> covered(g.order(), false);
    std::vector<std::vector<ElementId>> out;
    for (ElementId x = 0; x < g.order(); ++x) {
        if (covered[x]) continue;
        auto coset = left_coset(g, x, h);
        for (ElementId y : coset) covered[y] = true;
        out.push_back(std::move(coset));
    }
    return out;
}

std::vector<ElementId> conjugate_set(const FiniteGroup& g, ElementId c, std::span<const ElementId> s) {
    std::vector<ElementId> out;
    out.reserve(s.size());
    for (ElementId x : s) out.push_back(g.conj(c, x));
    std::sort(out.begin(), out.end());
    return out;
}

void validate_partition(const FiniteGroup& g, const Partition& partition) {
    std::vector<int> hits(g.order(), 0);
    for (const Subgroup& block : partition.blocks) {
        if (&block.parent() != &g) throw InvalidPartition("block belongs to another group");
        for (ElementId x : block.elements()) ++hits[x];
    }
    if (partition.blocks.empty()) throw InvalidPartition("partition has no blocks");
    for (ElementId x = 1; x < g.order(); ++x) {
        if (hits[x] == 0) throw InvalidPartition("element " + std::to_string(x) + " is not covered");
        if (hits[x] > 1) {
            throw InvalidPartition("element " + std::to_string(x) + " lies in two blocks");
        }
    }
}

std::optional<Partition> find_partition(const FiniteGroup& g, std::size_t max_order) {
    if (g.order() > max_order) {
        throw OrderCap("partition search capped at order " + std::to_string(max_order));
    }
    const std::size_t n = g.order();
    if (n == 1) return Partition{{cyclic_subgroup(g, kIdentity)}};

    std::set<std::vector<ElementId>> seen;
    std::vector<Subgroup> candidates;
    for (ElementId x = 1; x < n; ++x) {
        Subgroup h = cyclic_subgroup(g, x);
        if (seen.insert(h.elements()).second) candidates.push_back(std::move(h));
    }
    // Larger blocks first, so maximal cyclic subgroups are tried before their
    // subgroups.
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const Subgroup& a, const Subgroup& b) { return a.order() > b.order(); });

    std::vector<bool> covered(n, false);
    std::vector<std::size_t> chosen;
    std::size_t budget = 1'000'000;

    std::function<bool()> search = [&]() -> bool {
        if (budget == 0) return false;
        --budget;
        ElementId x = 1;
        while (x < n && covered[x]) ++x;
        if (x == n) return true;
        for (std::size_t i = 0; i < candidates.size(); ++i) {
            const Subgroup& c = candidates[i];
            if (!c.contains(x)) continue;
            bool disjoint = true;
            for (ElementId y : c.elements()) {
                if (y != kIdentity && covered[y]) {
                    disjoint = false;
                    break;
                }
            }
            if (!disjoint) continue;
            for (ElementId y : c.elements()) covered[y] = true;
            chosen.push_back(i);
            if (search()) return true;
            chosen.pop_back();
            for (ElementId y : c.elements()) {
                if (y != kIdentity) covered[y] = false;
            }
        }
        return false;
    };
    covered[kIdentity] = true;
    if (!search()) return std::nullopt;

    Partition partition;
    for (std::size_t i : chosen) partition.blocks.push_back(candidates[i]);
    std::sort(partition.blocks.begin(), partition.blocks.end(),
              [](const Subgroup& a, const Subgroup& b) { return a.elements() < b.elements(); });
    validate_partition(g, partition);
    return partition;
}

FiniteGroup cyclic(std::size_t n) {
    if (n == 0) throw BadSpec("cyclic group order must be positive");
    std::vector<ElementId> table(n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) table[a * n + b] = static_cast<ElementId>((a + b) % n);
    return FiniteGroup(n, std::move(table));
}

FiniteGroup quaternion8() {
    // id = 2*unit + sign, unit in {1, i, j, k}, sign 1 means negated.
    // unit product: sign and unit of u*v.
    static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
    static const char* kNames[4] = {"1", "i", "j", "k"};
    std::vector<ElementId> table(64);
    std::vector<std::string> labels(8);
    for (int a = 0; a < 8; ++a) {
        labels[a] = std::string(a % 2 ? "-" : "") + kNames[a / 2];
        for (int b = 0; b < 8; ++b) {
            const int ua = a / 2, ub = b / 2;
            const int sign = (a % 2) ^ (b % 2) ^ kSign[ua][ub];
            table[a * 8 + b] = static_cast<ElementId>(2 * kUnit[ua][ub] + sign);
        }
    }
    return FiniteGroup(8, std::move(table), std::move(labels));
}

FiniteGroup gpq(std::uint64_t p, std::uint64_t q) {
    if (!modp::is_prime(p) || !modp::is_prime(q)) throw BadSpec("gpq needs primes p and q");
    if ((p - 1) % q != 0) {
        throw BadSpec("gpq:" + std::to_string(p) + ":" + std::to_string(q) + " needs q | p-1");
    }
    const modp::Prime prime(p);
    // Smallest primitive root mod p.
    std::uint64_t root = 0;
    for (std::uint64_t h = 1; h < p && root == 0; ++h) {
        const modp::ModPElement x = modp::ModPElement::from_unsigned(h, prime);
        bool primitive = true;
        for (std::uint64_t f = 2; f <= p - 1; ++f) {
            if ((p - 1) % f == 0 && modp::is_prime(f) && x.pow((p - 1) / f).residue() == 1) {
                primitive = false;
                break;
            }
        }
        if (primitive) root = h;
    }
    const std::uint64_t r =
        modp::ModPElement::from_unsigned(root, prime).pow((p - 1) / q).residue();
    std::vector<std::uint64_t> r_pow(q, 1);
    for (std::uint64_t b = 1; b < q; ++b) r_pow[b] = r_pow[b - 1] * r % p;

    const std::size_t n = p * q;
    std::vector<ElementId> table(n * n);
    std::vector<std::string> labels(n);
    for (std::uint64_t a1 = 0; a1 < p; ++a1)
        for (std::uint64_t b1 = 0; b1 < q; ++b1) {
            const std::size_t x = a1 * q + b1;
            labels[x] = "(" + std::to_string(a1) + "," + std::to_string(b1) + ")";
            for (std::uint64_t a2 = 0; a2 < p; ++a2)
                for (std::uint64_t b2 = 0; b2 < q; ++b2) {
                    const std::uint64_t a = (a1 + r_pow[b1] * a2) % p;
                    const std::uint64_t b = (b1 + b2) % q;
                    table[x * n + a2 * q + b2] = static_cast<ElementId>(a * q + b);
                }
        }
    return FiniteGroup(n, std::move(table), std::move(labels));
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
    const std::size_t na = a.order(), nb = b.order(), n = na * nb;
    std::vector<ElementId> table(n * n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            const ElementId first = a.mul(x / nb, y / nb);
            const ElementId second = b.mul(x % nb, y % nb);
            table[x * n + y] = static_cast<ElementId>(first * nb + second);
        }
    return FiniteGroup(n, std::move(table));
}

FiniteGroup read_table(std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    auto next_line = [&](const std::string& expecting) {
        if (!std::getline(in, line)) {
            throw BadTable(table_error(line_no + 1, "unexpected end of file, expected " + expecting));
        }
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
    };

    next_line("header");
    if (line != "group-table v1") throw BadTable(table_error(line_no, "expected header 'group-table v1'"));

    next_line("order");
    std::size_t n = 0;
    {
        std::istringstream ss(line);
        long long value = 0;
        std::string rest;
        if (!(ss >> value) || (ss >> rest) || value <= 0) {
            throw BadTable(table_error(line_no, "expected a positive order"));
        }
        n = static_cast<std::size_t>(value);
    }
    if (n > 100'000) throw BadTable(table_error(line_no, "order too large"));

    std::vector<ElementId> table;
    table.reserve(n * n);
    for (std::size_t row = 0; row < n; ++row) {
        next_line("row " + std::to_string(row));
        std::istringstream ss(line);
        std::string token;
        std::size_t count = 0;
        while (ss >> token) {
            std::size_t pos = 0;
            long long value = -1;
            try {
                value = std::stoll(token, &pos);
            } catch (const std::exception&) {
                pos = 0;
            }
            if (pos != token.size()) {
                throw BadTable(table_error(line_no, "not an integer: '" + token + "'"));
            }
            if (value < 0 || static_cast<std::size_t>(value) >= n) {
                throw BadTable(table_error(line_no, "entry " + token + " out of range [0, " +
                                                        std::to_string(n - 1) + "]"));
            }
            table.push_back(static_cast<ElementId>(value));
            ++count;
        }
        if (count != n) {
            throw BadTable(table_error(line_no, "expected " + std::to_string(n) + " entries, found " +
                                                    std::to_string(count)));
        }
        const auto first = table.end() - static_cast<std::ptrdiff_t>(n);
        if (*first != row) {
            throw BadTable(table_error(line_no, "row " + std::to_string(row) +
                                                    " must start with its own id (identity is id 0)"));
        }
        if (row == 0) {
            for (std::size_t j = 0; j < n; ++j) {
                if (first[j] != j) throw BadTable(table_error(line_no, "identity row must be 0 1 ... N-1"));
            }
        }
        std::vector<ElementId> sorted(first, table.end());
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw BadTable(table_error(line_no, "row " + std::to_string(row) + " repeats an entry"));
        }
    }
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            throw BadTable(table_error(line_no, "trailing content after table"));
        }
    }
    // Structural failures refer to the body, which starts on line 3.
    try {
        return FiniteGroup(n, std::move(table));
    } catch (const BadTable& e) {
        throw BadTable(std::string("lines 3-") + std::to_string(n + 2) + ": " + e.what());
    }
}

FiniteGroup load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw BadTable("cannot open table file '" + path + "'");
    return read_table(in);
}

void write_table(std::ostream& out, const FiniteGroup& g) {
    out << "group-table v1\n" << g.order() << '\n';
    for (ElementId a = 0; a < g.order(); ++a) {
        for (ElementId b = 0; b < g.order(); ++b) {
            if (b) out << ' ';
            out << g.mul(a, b);
        }
        out << '\n';
    }
}

}  // namespace scharlau::groups
