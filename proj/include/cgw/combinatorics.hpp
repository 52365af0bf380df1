#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace cgw {

using BigInt = boost::multiprecision::cpp_int;

// Noncrossing perfect pairing of 2N boundary points. pairing[j] is the
// partner of point j, 0-based.
struct ArcDiagram {
    int n_arcs = 0;
    std::vector<int> pairing;

    bool operator==(const ArcDiagram&) const = default;
    auto operator<=>(const ArcDiagram& o) const { return pairing <=> o.pairing; }

    int points() const { return 2 * n_arcs; }
    // true if the 0-based points a and b are joined by an arc
    bool joins(int a, int b) const { return pairing[a] == b; }
    std::string parens() const;
};

// Throws std::invalid_argument unless `pairing` is a fixed-point-free
// noncrossing involution.
ArcDiagram make_diagram(std::vector<int> pairing);
ArcDiagram diagram_from_parens(const std::string& s);
bool is_noncrossing(const std::vector<int>& pairing);

BigInt catalan(int n);
long catalan_small(int n);

// Interval i (1-based) joins points i and i+1; i = 2N wraps to point 1.
// Returns the 0-based endpoints.
std::pair<int, int> interval_points(int n_arcs, int i);
bool contains_interval(const ArcDiagram& d, int i);

// Lexicographic on pairing arrays. With an anchor interval, the C_{N-1}
// diagrams containing that arc come first, each group keeping the
// lexicographic order.
std::vector<ArcDiagram> enumerate_connectivities(int n, std::optional<int> anchor = {});

// 1-based position of d in list, throws if absent
int index_of(const std::vector<ArcDiagram>& list, const ArcDiagram& d);

int loop_count(const ArcDiagram& top, const ArcDiagram& bottom);

// Pinch the arcs ending at the endpoints of interval i and reconnect.
ArcDiagram cut_map_chi(const ArcDiagram& d, int i);

// Remove the arc joining the 0-based points a, a+1 (or 2N-1, 0) and relabel.
ArcDiagram remove_arc(const ArcDiagram& d, int a, int b);
// Insert a new arc between new points at 0-based slots p, p+1.
ArcDiagram insert_arc(const ArcDiagram& d, int p);

// Every perfect matching of 2n points, crossing or not; used as a brute-force
// reference by the tests.
std::vector<std::vector<int>> all_perfect_matchings(int n);

}  // namespace cgw
