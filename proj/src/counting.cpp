#include "stirling/counting.hpp"

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "stirling/error.hpp"

namespace stirling {

namespace {

// Memo tables are per thread; growing them never invalidates a value that
// another thread could be reading.
thread_local std::vector<std::vector<BigCount>> pascal_rows{{BigCount(1)}};
thread_local std::vector<std::vector<BigCount>> stirling_rows{{BigCount(1)}};
thread_local std::map<std::pair<int, int>, BigCount> f_memo;

void require_sphere_domain(const char* what, int m, int n) {
  if (m < 2 || n < m) {
    throw DomainError(std::string(what) + ": requires n >= m >= 2, got m=" + std::to_string(m) +
                      ", n=" + std::to_string(n));
  }
}

BigCount power(int base, int exponent) {
  BigCount result = 1;
  BigCount b = base;
  for (int i = 0; i < exponent; ++i) result *= b;
  return result;
}

}  // namespace

BigCount binomial(int n, int k) {
  if (n < 0 || k < 0 || k > n) return 0;
  while (static_cast<int>(pascal_rows.size()) <= n) {
    const auto& prev = pascal_rows.back();
    std::vector<BigCount> row(prev.size() + 1);
    row.front() = 1;
    row.back() = 1;
    for (std::size_t i = 1; i + 1 < row.size(); ++i) row[i] = prev[i - 1] + prev[i];
    pascal_rows.push_back(std::move(row));
  }
  return pascal_rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(k)];
}

BigCount factorial(int n) {
  if (n < 0) throw DomainError("factorial of a negative number");
  BigCount r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

BigCount stirling2(int n, int m) {
  if (n < 0 || m < 0) throw DomainError("stirling2: arguments must be nonnegative");
  if (m > n) return 0;
  while (static_cast<int>(stirling_rows.size()) <= n) {
    const auto& prev = stirling_rows.back();
    const int row_n = static_cast<int>(stirling_rows.size());
    std::vector<BigCount> row(static_cast<std::size_t>(row_n) + 1);
    row[0] = 0;
    for (int k = 1; k <= row_n; ++k) {
      const BigCount carry = k < static_cast<int>(prev.size()) ? prev[static_cast<std::size_t>(k)] : BigCount(0);
      row[static_cast<std::size_t>(k)] = k * carry + prev[static_cast<std::size_t>(k - 1)];
    }
    stirling_rows.push_back(std::move(row));
  }
  return stirling_rows[static_cast<std::size_t>(n)][static_cast<std::size_t>(m)];
}

BigCount surjections(int m, int n) {
  if (m < 0 || n < 0) throw DomainError("surjections: arguments must be nonnegative");
  BigCount total = 0;
  for (int k = 0; k <= m; ++k) {
    const BigCount term = binomial(m, k) * power(m - k, n);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigCount f_closed(int m, int n) {
  require_sphere_domain("f_closed", m, n);
  BigCount total = 0;
  for (int alpha = 1; alpha <= m - 1; ++alpha) {
    const BigCount term = binomial(m, alpha + 1) * power(alpha, n);
    if ((m + alpha + 1) % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

BigCount f_surjection_form(int m, int n) {
  require_sphere_domain("f_surjection_form", m, n);
  BigCount total = 0;
  for (int j = m - 1; j >= 1; --j) {
    // Sign of Surj(j, n) is + for j = m-1 and alternates downward.
    if ((m - 1 - j) % 2 == 0) {
      total += surjections(j, n);
    } else {
      total -= surjections(j, n);
    }
  }
  return total;
}

BigCount f_recursive(int m, int n) {
  require_sphere_domain("f_recursive", m, n);
  if (m == 2) return 1;
  if (n == m) return factorial(m) - 1;
  const auto key = std::make_pair(m, n);
  if (auto it = f_memo.find(key); it != f_memo.end()) return it->second;
  // Bottom-up over the rectangle keeps recursion depth bounded.
  for (int nn = 3; nn <= n; ++nn) {
    for (int mm = 3; mm <= std::min(m, nn); ++mm) {
      const auto k = std::make_pair(mm, nn);
      if (f_memo.count(k)) continue;
      BigCount value;
      if (mm == nn) {
        value = factorial(mm) - 1;
      } else {
        const BigCount& left = f_memo.at({mm, nn - 1});
        const BigCount down = (mm - 1 == 2) ? BigCount(1) : f_memo.at({mm - 1, nn - 1});
        value = (mm - 1) * left + mm * down;
      }
      f_memo.emplace(k, std::move(value));
    }
  }
  return f_memo.at(key);
}

BigCount cell_count(int m, int n, int d) {
  require_sphere_domain("cell_count", m, n);
  if (d < 0 || d > n - m) {
    throw DomainError("cell_count: dimension " + std::to_string(d) + " outside 0.." + std::to_string(n - m));
  }
  return binomial(n, d) * power(m - 1, d) * factorial(m) * stirling2(n - d, m);
}

BigCount euler_formula(int m, int n) {
  require_sphere_domain("euler_formula", m, n);
  BigCount chi = 0;
  for (int d = 0; d <= n - m; ++d) {
    if (d % 2 == 0) {
      chi += cell_count(m, n, d);
    } else {
      chi -= cell_count(m, n, d);
    }
  }
  return chi;
}

BigCount cover_count(int m, int s, int n) {
  if (s < 0 || m < s || n < 0) throw DomainError("cover_count: requires m >= s >= 0 and n >= 0");
  BigCount total = 0;
  for (int k = 0; k <= s; ++k) {
    const BigCount term = binomial(s, k) * power(m - k, n);
    if (k % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  return total;
}

}  // namespace stirling
