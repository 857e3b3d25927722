//! Placeholder; filled in after the physics core builds.
