//! Constraint pipeline (stub).
