"""Abstract elementary classes of finite graphs: axiom checks, amalgam search and certificates."""
