"""State Kronecker canonical forms for 2 x m x n tripartite pure states
"""
__version__ = '0.1.0'
