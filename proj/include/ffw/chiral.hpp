#pragma once

#include <map>
#include <optional>
#include <set>

#include "ffw/cyc.hpp"
#include "ffw/fusion.hpp"
#include "ffw/report.hpp"

namespace ffw {

// Dense matrix over Q(zeta_N).
struct CMat {
    int order = 0, rows = 0, cols = 0;
    std::vector<Cyc> a;

    CMat() = default;
    CMat(int n, int r, int c) : order(n), rows(r), cols(c), a((size_t)r * c, Cyc(n)) {}
    static CMat identity(int order, int n);
    static CMat scalar(const Cyc& x) { CMat m(x.order(), 1, 1); m(0, 0) = x; return m; }

    Cyc& operator()(int i, int j) { return a[(size_t)i * cols + j]; }
    const Cyc& operator()(int i, int j) const { return a[(size_t)i * cols + j]; }
    CMat operator*(const CMat& o) const;
    CMat operator*(const Cyc& s) const;
    CMat operator+(const CMat& o) const;
    CMat operator-(const CMat& o) const;
    bool operator==(const CMat& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    CMat transpose() const;
    std::optional<CMat> inverse() const;
    bool is_identity() const;
    bool is_zero() const;
    std::string str() const;
};

// Key of a fusing-matrix block in the product/iterate labelling
//   F(Y_{a1 a5}^{a4} (x) Y_{a2 a3}^{a5} ; Y_{a6 a3}^{a4} (x) Y_{a1 a2}^{a6}).
struct FKey {
    int a1, a2, a3, a4, a5, a6;
    auto operator<=>(const FKey&) const = default;
};

// Sparse fusing tensor; each block is dense over (i, j, l, k), the
// multiplicity indices of the spaces (a1,a5,a4), (a2,a3,a5), (a6,a3,a4), (a1,a2,a6).
class FTensor {
public:
    struct Block {
        std::array<int, 4> dims{};
        std::vector<Cyc> v;
        Cyc& at(int i, int j, int l, int k) { return v[((i * dims[1] + j) * dims[2] + l) * dims[3] + k]; }
        const Cyc& at(int i, int j, int l, int k) const {
            return v[((i * dims[1] + j) * dims[2] + l) * dims[3] + k];
        }
    };

    FTensor() = default;
    FTensor(int order, const FusionData* fusion) : order_(order), fusion_(fusion) {}

    int order() const { return order_; }
    const FusionData& fusion() const { return *fusion_; }
    void rebind(const FusionData* f) { fusion_ = f; }
    bool admissible(const FKey& k) const;
    Block& block(const FKey& k);  // creates a zero block when admissible
    const Block* find(const FKey& k) const;
    Cyc get(const FKey& k, int i = 0, int j = 0, int l = 0, int m = 0) const;  // zero if absent
    void set(const FKey& k, int i, int j, int l, int m, const Cyc& v) { block(k).at(i, j, l, m) = v; }
    const std::map<FKey, Block>& blocks() const { return blocks_; }
    std::map<FKey, Block>& blocks() { return blocks_; }
    // Enumerates all admissible keys in deterministic order.
    std::vector<FKey> admissible_keys() const;

private:
    int order_ = 0;
    const FusionData* fusion_ = nullptr;
    std::map<FKey, Block> blocks_;
};

// sigma12 : V_{a1a2}^{a3} -> V_{a2a1}^{a3},  sigma23 : V_{a1a2}^{a3} -> V_{a1a3'}^{a2'}.
// Column i of a matrix is the image of basis element i of the source space.
struct S3Action {
    std::map<Triple, CMat> s12;
    std::map<Triple, CMat> s23;
};

struct ChiralData {
    int order = 0;
    FusionData fusion;
    FTensor F;
    S3Action sigma;
    std::map<Triple, int> canonical;  // canonical spaces -> basis index of the canonical element

    ChiralData() = default;
    ChiralData(const ChiralData& o);
    ChiralData& operator=(const ChiralData& o);

    int e() const { return fusion.unit; }
    int dual(int a) const { return fusion.dual[a]; }
    Cyc zero() const { return Cyc(order); }
    Cyc one() const { return Cyc(order, 1); }
    int canon(const Triple& t) const;  // marker index; throws if t is not marked
};

// Spaces carrying a canonical element: (e,a,a), (a,e,a), (a,a',e).
std::vector<Triple> canonical_spaces(const FusionData& f);

CMat sigma123(const ChiralData& c, const Triple& t);  // sigma12 o sigma23 on V_t
Triple rot123(const FusionData& f, const Triple& t);  // target space of sigma123

Report verify_pentagon(const ChiralData& c);
Cyc f_a(const ChiralData& c, int a);  // throws when the canonical entry is missing or zero

struct PairingData {
    std::map<Triple, CMat> pairing;  // rows: basis of V_t, cols: basis of V_{t'}
    std::map<Triple, CMat> dual;     // dual basis of V_{t'} in the bundle basis, columns indexed by i
    std::map<Triple, CMat> second;   // pairing from the second formula
};

// Both formulas for the pairing on V_t; throws std::runtime_error on disagreement.
CMat pairing_matrix(const ChiralData& c, const Triple& t);
CMat pairing_matrix_second(const ChiralData& c, const Triple& t);
PairingData compute_pairings(const ChiralData& c, Report* report = nullptr);
Report verify_pairing(const ChiralData& c);
Report verify_nondegeneracy(const ChiralData& c);
CMat dual_basis(const ChiralData& c, const Triple& t);  // throws on singular pairing
Report verify_dual_basis(const ChiralData& c);

// F in the dual bases on all four slots.
Cyc f_dual(const ChiralData& c, const PairingData& p, const FKey& k, int i, int j, int l, int m);
Report verify_prop_fusing(const ChiralData& c);
Report verify_prop_fusing(const ChiralData& c, const PairingData& p);

// Modified form sqrt(F_{a3})/(sqrt(F_{a1}) sqrt(F_{a2})) <.,.> on V_t.
struct FormMatrix {
    bool exact = true;
    CMat m;                       // exact path
    int rows = 0, cols = 0;
    std::vector<HComplex> num;    // numeric path, row-major
    std::complex<double> at(int i, int j) const;
};
FormMatrix modified_form(const ChiralData& c, const Triple& t);
FormMatrix modified_form(const ChiralData& c, const PairingData& p, const Triple& t);
std::optional<Cyc> sqrt_f(const ChiralData& c, int a);

Report verify_s3_relations(const ChiralData& c);
Report verify_s3_invariance(const ChiralData& c);
Report verify_formula1(const ChiralData& c);

// Digits used for the numeric embedding and the relative tolerance on that path.
constexpr unsigned kFormDigits = 30;
inline const char* kFormTolerance = "1e-12";

}  // namespace ffw
