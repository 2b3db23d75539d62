"""Lattice, permutation-group and representation layers"""
