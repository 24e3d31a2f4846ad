#pragma once

#include <chrono>
#include <cstdint>

namespace latforge {

// Wall-clock cap for a single top-level operation, set from LATFORGE_BUDGET_MS
// or explicitly through the C API. Searches poll budget_check() in their hot
// loops; hitting the deadline raises Error(ErrKind::budget).
class BudgetScope {
public:
    // ms <= 0 means unlimited
    explicit BudgetScope(std::int64_t ms);
    ~BudgetScope();

    BudgetScope(const BudgetScope&) = delete;
    BudgetScope& operator=(const BudgetScope&) = delete;

private:
    std::chrono::steady_clock::time_point prev_deadline_;
    bool prev_active_ = false;
};

// Reads LATFORGE_BUDGET_MS (unset or <=0 disables the cap).
std::int64_t budget_ms_from_env();

// Throws Error(ErrKind::budget) once the active deadline has passed.
// Cheap when called rarely; call sites batch it every few thousand steps.
void budget_check();

} // namespace latforge
