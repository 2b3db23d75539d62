"""Tests for the Critical Multi-Cubic Lattice Toolkit"""
