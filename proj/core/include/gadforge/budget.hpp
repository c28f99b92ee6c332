#pragma once

namespace gadforge {

class ResourceMonitor;

namespace budget {

// Long-running loops call checkpoint() at batch/epoch boundaries; it throws
// BudgetExceededError once the active monitor observes the resident-memory
// budget crossed. No-op when no monitor is installed.
void set_active_monitor(ResourceMonitor* monitor);
ResourceMonitor* active_monitor();
void checkpoint();

}  // namespace budget
}  // namespace gadforge
