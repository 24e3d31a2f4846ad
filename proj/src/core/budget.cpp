#include "budget.hpp"
#include "error.hpp"

#include <cstdlib>
#include <string>

namespace latforge {

namespace {
thread_local bool g_active = false;
thread_local std::chrono::steady_clock::time_point g_deadline;
} // namespace

BudgetScope::BudgetScope(std::int64_t ms) {
    prev_active_ = g_active;
    prev_deadline_ = g_deadline;
    if (ms > 0) {
        g_active = true;
        g_deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(ms);
    } else {
        g_active = false;
    }
}

BudgetScope::~BudgetScope() {
    g_active = prev_active_;
    g_deadline = prev_deadline_;
}

std::int64_t budget_ms_from_env() {
    const char* v = std::getenv("LATFORGE_BUDGET_MS");
    if (!v || !*v) return 0;
    try {
        return std::stoll(std::string(v));
    } catch (...) {
        return 0;
    }
}

void budget_check() {
    if (g_active && std::chrono::steady_clock::now() > g_deadline)
        throw Error(ErrKind::budget, "budget exceeded");
}

} // namespace latforge
