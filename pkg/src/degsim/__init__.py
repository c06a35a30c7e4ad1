"""Degree-similarity, mu-polynomials and Smith forms of graphs, in exact arithmetic."""
