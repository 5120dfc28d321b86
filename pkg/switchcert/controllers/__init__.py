# FILE: switchcert/controllers/__init__.py
