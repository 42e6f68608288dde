"""
The extended SQL dialect: tokens, syntax tree, parser and printer.
"""
