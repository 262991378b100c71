"""Reference data shipped with closurelab (exact tables, JSON)."""
