"""判別式サイクル、無限遠の解消、従属な組、レポート"""
