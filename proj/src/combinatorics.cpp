#include "cgw/combinatorics.hpp"

#include <algorithm>
#include <functional>

namespace cgw {

bool is_noncrossing(const std::vector<int>& p)
{
    const int m = static_cast<int>(p.size());
    for (int a = 0; a < m; ++a) {
        int c = p[a];
        if (c <= a) continue;
        for (int b = a + 1; b < c; ++b) {
            int d = p[b];
            if (d > c || d < a) return false;
        }
    }
    return true;
}

ArcDiagram make_diagram(std::vector<int> pairing)
{
    const int m = static_cast<int>(pairing.size());
    if (m == 0 || m % 2) throw std::invalid_argument("pairing must have even positive length");
    for (int j = 0; j < m; ++j) {
        int k = pairing[j];
        if (k < 0 || k >= m || k == j || pairing[k] != j)
            throw std::invalid_argument("pairing is not a fixed-point-free involution");
    }
    if (!is_noncrossing(pairing)) throw std::invalid_argument("pairing has crossing arcs");
    return ArcDiagram{m / 2, std::move(pairing)};
}

std::string ArcDiagram::parens() const
{
    std::string s;
    for (int j = 0; j < points(); ++j) s += pairing[j] > j ? '(' : ')';
    return s;
}

ArcDiagram diagram_from_parens(const std::string& s)
{
    std::vector<int> p(s.size(), -1), stack;
    for (int j = 0; j < static_cast<int>(s.size()); ++j) {
        if (s[j] == '(') {
            stack.push_back(j);
        } else if (s[j] == ')') {
            if (stack.empty()) throw std::invalid_argument("unbalanced parentheses");
            p[j] = stack.back();
            p[stack.back()] = j;
            stack.pop_back();
        } else {
            throw std::invalid_argument("unexpected character in diagram string");
        }
    }
    if (!stack.empty()) throw std::invalid_argument("unbalanced parentheses");
    return make_diagram(std::move(p));
}

BigInt catalan(int n)
{
    if (n < 1) throw std::invalid_argument("catalan: N must be positive");
    BigInt num = 1, den = 1;
    for (int k = 2; k <= n; ++k) {
        num *= n + k;
        den *= k;
    }
    return num / den;
}

long catalan_small(int n)
{
    return catalan(n).convert_to<long>();
}

std::pair<int, int> interval_points(int n_arcs, int i)
{
    const int m = 2 * n_arcs;
    if (i < 1 || i > m) throw std::invalid_argument("interval index out of range");
    return {i - 1, i % m};
}

bool contains_interval(const ArcDiagram& d, int i)
{
    auto [a, b] = interval_points(d.n_arcs, i);
    return d.joins(a, b);
}

static void build(std::vector<int>& p, int lo, int hi, std::vector<std::vector<int>>& out,
                  std::vector<std::pair<int, int>>& pending)
{
    // fill [lo, hi) then continue with the pending ranges
    if (lo >= hi) {
        if (pending.empty()) {
            out.push_back(p);
            return;
        }
        auto [a, b] = pending.back();
        pending.pop_back();
        build(p, a, b, out, pending);
        pending.emplace_back(a, b);
        return;
    }
    for (int k = lo + 1; k < hi; k += 2) {
        p[lo] = k;
        p[k] = lo;
        pending.emplace_back(k + 1, hi);
        build(p, lo + 1, k, out, pending);
        pending.pop_back();
    }
}

std::vector<ArcDiagram> enumerate_connectivities(int n, std::optional<int> anchor)
{
    if (n < 1) throw std::invalid_argument("N must be positive");
    std::vector<int> p(2 * n, -1);
    std::vector<std::vector<int>> raw;
    std::vector<std::pair<int, int>> pending;
    build(p, 0, 2 * n, raw, pending);
    std::sort(raw.begin(), raw.end());
    std::vector<ArcDiagram> out;
    out.reserve(raw.size());
    for (auto& r : raw) out.push_back(ArcDiagram{n, std::move(r)});
    if (anchor) {
        int i = *anchor;
        interval_points(n, i);
        std::stable_partition(out.begin(), out.end(),
                              [i](const ArcDiagram& d) { return contains_interval(d, i); });
    }
    return out;
}

int index_of(const std::vector<ArcDiagram>& list, const ArcDiagram& d)
{
    auto it = std::find(list.begin(), list.end(), d);
    if (it == list.end()) throw std::invalid_argument("diagram not in list");
    return static_cast<int>(it - list.begin()) + 1;
}

int loop_count(const ArcDiagram& top, const ArcDiagram& bottom)
{
    if (top.n_arcs != bottom.n_arcs) throw std::invalid_argument("loop_count: size mismatch");
    const int m = top.points();
    std::vector<char> seen(m, 0);
    int loops = 0;
    for (int s = 0; s < m; ++s) {
        if (seen[s]) continue;
        ++loops;
        int j = s;
        do {
            seen[j] = 1;
            int k = top.pairing[j];
            seen[k] = 1;
            j = bottom.pairing[k];
        } while (j != s);
    }
    return loops;
}

ArcDiagram cut_map_chi(const ArcDiagram& d, int i)
{
    auto [a, b] = interval_points(d.n_arcs, i);
    if (d.joins(a, b)) throw std::invalid_argument("cut_map_chi: diagram already contains the arc");
    std::vector<int> p = d.pairing;
    int fa = p[a], fb = p[b];
    p[a] = b;
    p[b] = a;
    p[fa] = fb;
    p[fb] = fa;
    return make_diagram(std::move(p));
}

ArcDiagram remove_arc(const ArcDiagram& d, int a, int b)
{
    if (!d.joins(a, b)) throw std::invalid_argument("remove_arc: points are not joined");
    const int m = d.points();
    std::vector<int> relabel(m, -1);
    int next = 0;
    for (int j = 0; j < m; ++j)
        if (j != a && j != b) relabel[j] = next++;
    std::vector<int> p(m - 2);
    for (int j = 0; j < m; ++j)
        if (relabel[j] >= 0) p[relabel[j]] = relabel[d.pairing[j]];
    if (p.empty()) throw std::invalid_argument("remove_arc: cannot remove the last arc");
    return make_diagram(std::move(p));
}

ArcDiagram insert_arc(const ArcDiagram& d, int slot)
{
    const int m = d.points();
    if (slot < 0 || slot > m) throw std::invalid_argument("insert_arc: slot out of range");
    auto shift = [slot](int j) { return j < slot ? j : j + 2; };
    std::vector<int> p(m + 2);
    for (int j = 0; j < m; ++j) p[shift(j)] = shift(d.pairing[j]);
    p[slot] = slot + 1;
    p[slot + 1] = slot;
    return make_diagram(std::move(p));
}

std::vector<std::vector<int>> all_perfect_matchings(int n)
{
    std::vector<std::vector<int>> out;
    std::vector<int> p(2 * n, -1);
    std::function<void()> rec = [&]() {
        int j = 0;
        while (j < 2 * n && p[j] >= 0) ++j;
        if (j == 2 * n) {
            out.push_back(p);
            return;
        }
        for (int k = j + 1; k < 2 * n; ++k) {
            if (p[k] >= 0) continue;
            p[j] = k;
            p[k] = j;
            rec();
            p[j] = p[k] = -1;
        }
    };
    rec();
    return out;
}

}  // namespace cgw
