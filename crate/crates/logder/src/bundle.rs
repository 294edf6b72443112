//! Bundle-side analysis (stub).
