#include "rigidity/numbers.hpp"

namespace rigidity {

Int binomial(const Int& n, const Int& k) {
    if (k < 0 || n < 0 || k > n) return 0;
    Int kk = k;
    if (n - k < kk) kk = n - k;
    Int result = 1;
    for (Int i = 1; i <= kk; ++i) {
        result *= n - kk + i;
        result /= i;  // exact at every step
    }
    return result;
}

}  // namespace rigidity
