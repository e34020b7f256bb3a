// placeholder so the shared target links while the core is brought up
