#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace stirling {

/// Exact signed integer used by every counting formula.
using BigCount = boost::multiprecision::cpp_int;

/// Binomial coefficient C(n, k); zero outside 0 <= k <= n.
BigCount binomial(int n, int k);

BigCount factorial(int n);

/// Partitions of an n-set into m nonempty blocks (triangle recurrence).
BigCount stirling2(int n, int m);

/// Surjections [n] -> [m] by inclusion-exclusion.
BigCount surjections(int m, int n);

// The three routes to the sphere count f(m, n). All require n >= m >= 2 and
// throw DomainError otherwise.

/// Alternating sum over alpha = 1..m-1 of C(m, alpha+1) alpha^n.
BigCount f_closed(int m, int n);

/// Surj(m-1,n) - Surj(m-2,n) + ... + (-1)^m Surj(1,n).
BigCount f_surjection_form(int m, int n);

/// f(m,n) = (m-1) f(m,n-1) + m f(m-1,n-1), f(2,n) = 1, f(m,m) = m! - 1.
BigCount f_recursive(int m, int n);

/// Euler characteristic from the per-dimension cube counts.
BigCount euler_formula(int m, int n);

/// Number of d-cubes of Str(T, n) for any tree T on m vertices.
BigCount cell_count(int m, int n, int d);

/// Functions [n] -> [m] whose image contains a fixed s-subset.
BigCount cover_count(int m, int s, int n);

}  // namespace stirling
