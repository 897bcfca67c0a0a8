# banachlab 测试
