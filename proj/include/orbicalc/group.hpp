#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace orbicalc {

constexpr int kDefaultOrderCap = 2048;

// Finite group given by its multiplication table; index 0 is the identity.
class FiniteGroup {
public:
    FiniteGroup() = default;

    // Validates: square, in range, identity at 0, Latin square, associative.
    static FiniteGroup from_table(const std::vector<std::vector<int>>& mul, std::string name = "");
    // Closure of permutations of {0..degree-1}; (ab)(x) = a(b(x)).
    static FiniteGroup from_permutations(int degree, const std::vector<std::vector<int>>& gens,
                                         std::string name = "", int cap = kDefaultOrderCap);

    int order() const { return n_; }
    int mul(int a, int b) const { return mul_[static_cast<size_t>(a) * n_ + b]; }
    int inv(int a) const { return inv_[a]; }
    int conj(int g, int x) const { return mul(mul(g, x), inv_[g]); }  // g x g^-1
    int power(int g, long k) const;
    int element_order(int g) const { return ord_[g]; }
    int exponent() const { return exponent_; }
    bool is_abelian() const;
    const std::string& name() const { return name_; }
    void set_name(std::string name) { name_ = std::move(name); }

    std::vector<std::vector<int>> table() const;

    // Conjugacy classes, ordered by least element; class 0 is {e}.
    int num_classes() const { return static_cast<int>(classes_.size()); }
    const std::vector<std::vector<int>>& classes() const { return classes_; }
    int class_of(int g) const { return class_of_[g]; }

    bool operator==(const FiniteGroup& o) const { return mul_ == o.mul_; }

private:
    void finish();

    int n_ = 0;
    std::vector<int> mul_, inv_, ord_;
    int exponent_ = 1;
    std::string name_;
    std::vector<std::vector<int>> classes_;
    std::vector<int> class_of_;
};

// Sorted element list closed under the group law.
struct Subgroup {
    std::vector<int> elements;

    int order() const { return static_cast<int>(elements.size()); }
    bool contains(int g) const;
    bool operator==(const Subgroup& o) const { return elements == o.elements; }
    bool operator<(const Subgroup& o) const;  // by order, then lexicographic
};

Subgroup subgroup_generated(const FiniteGroup& g, const std::vector<int>& gens);
Subgroup cyclic_subgroup(const FiniteGroup& g, int x);
Subgroup whole_group(const FiniteGroup& g);
Subgroup conjugate(const FiniteGroup& g, const Subgroup& h, int x);  // x h x^-1
bool is_subgroup(const FiniteGroup& g, const std::vector<int>& elements);
bool is_subset(const Subgroup& a, const Subgroup& b);  // a inside b
bool is_cyclic(const FiniteGroup& g, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
// A small generating set, chosen greedily by least index.
std::vector<int> generating_set(const FiniteGroup& g, const Subgroup& h);

// The subgroup as a group in its own right: element i is h.elements[i].
FiniteGroup subgroup_as_group(const FiniteGroup& g, const Subgroup& h);

struct CyclicClass {
    Subgroup rep;                 // lexicographically least member of the orbit
    int generator = 0;            // least-index generator of rep
    std::vector<Subgroup> orbit;  // all conjugates, sorted
    std::vector<int> witnesses;   // witnesses[i] * rep * witnesses[i]^-1 == orbit[i]
};

struct ConjStructure {
    std::vector<std::vector<int>> classes;
    std::vector<int> class_of;
    std::vector<CyclicClass> cyclic_classes;
};

ConjStructure conjugacy_classes(const FiniteGroup& g);
// Ordered by subgroup order, then lexicographically.
std::vector<CyclicClass> cyclic_subgroup_classes(const FiniteGroup& g);

struct Normalizer {
    Subgroup group;
    int generator = -1;           // generator s of sigma when sigma is cyclic
    int sigma_order = 1;
    std::vector<long> power;      // power[i]: u s u^-1 = s^power[i] for u = group.elements[i]
    long power_of(int u) const;   // a(u) in (Z/|sigma|)^x
};

Normalizer normalizer(const FiniteGroup& g, const Subgroup& sigma);
Subgroup centralizer(const FiniteGroup& g, int x);

struct DoubleCoset {
    int rep = 0;                // least element
    std::vector<int> elements;  // sorted
    Subgroup intersection;      // sigma cap rep sigma rep^-1
};

std::vector<DoubleCoset> double_cosets(const FiniteGroup& g, const Subgroup& sigma);

// All generators of a cyclic subgroup; throws std::invalid_argument if not cyclic.
std::vector<int> generators_of(const FiniteGroup& g, const Subgroup& sigma);

}  // namespace orbicalc
