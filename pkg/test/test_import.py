def test_import():
    import cartanquot
    assert cartanquot.__version__
