#operations grouped by concern; see ksmetric/__init__.py for the public surface
