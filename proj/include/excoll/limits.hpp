#pragma once

namespace excoll::limits {

// Resource caps guarding degenerate inputs. Defaults may be overridden by the
// EXCOLL_CONDUCTOR_CAP and EXCOLL_ORDER_CAP environment variables, or at
// runtime through the setters.
long conductor_cap();
void set_conductor_cap(long cap);

long order_cap();
void set_order_cap(long cap);

}  // namespace excoll::limits
