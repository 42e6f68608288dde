"""
Entity-relationship models: parsing, validation, relational transformation,
DDL emission and the parser info knowledge base.
"""
